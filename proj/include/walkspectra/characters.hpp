#pragma once

#include "walkspectra/combinatorics.hpp"
#include "walkspectra/rational.hpp"

#include <stdexcept>

namespace walkspectra {

// Raised when a closed form is not available for the requested size, so the
// caller should fall back to the brute-force oracle.
class FormulaUnavailable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Cycle type of a conjugacy class of S_n, stored as a partition.
using CycleType = Partition;

// chi^lambda evaluated on the class mu, by Murnaghan-Nakayama rim-hook
// removal. Throws std::invalid_argument if |lambda| != |mu|.
BigInt mn_character(const Partition& lambda, const CycleType& mu);

// C_lambda = chi^lambda((1,2,3)) / d_lambda as an exact rational (n >= 3).
Rational normalized_three_cycle(const Partition& lambda);

// Same quantity from the central-character identity
//   C_lambda = 3 (sum c^2 - n(n-1)/2) / (n(n-1)(n-2)),
// evaluated in double precision in O(n). Used on hot paths.
double normalized_three_cycle_fast(const std::vector<int>& parts);

// Size of the S_n conjugacy class with cycle type mu.
BigInt class_size(const CycleType& mu);

}  // namespace walkspectra
