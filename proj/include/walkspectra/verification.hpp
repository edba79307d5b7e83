#pragma once

#include "walkspectra/spectra.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace walkspectra {

enum class OracleCheck { Spectra, Plancherel, Algebra, Tv, All };
OracleCheck parse_oracle_check(std::string_view text);

struct CheckResult {
  std::string check_name;
  int n = 0;
  std::string status;  // "pass", "fail" or "skipped"
  double max_residual = 0.0;
  std::string detail;
};

// Largest per-eigenvalue gap between a closed-form multiset (with exact
// multiplicities) and a sorted brute-force list, or +inf if the total
// multiplicities differ.
double multiset_residual(const std::vector<SpectrumEntry>& formula, const std::vector<double>& brute);

// Closed form versus brute force for every check family selected.
std::vector<CheckResult> run_oracle_checks(int n, OracleCheck which, double tolerance = 1e-9);

}  // namespace walkspectra
