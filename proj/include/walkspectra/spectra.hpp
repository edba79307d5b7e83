#pragma once

#include "walkspectra/characters.hpp"
#include "walkspectra/combinatorics.hpp"
#include "walkspectra/rational.hpp"

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace walkspectra {

// tt2r: identity and the 3-cycles (i,n-1,n), (i,n,n-1), each with mass 1/(2n-3).
// cycles3: uniform on all 3-cycles.
// tprime: identity with mass 1/(n-1), each (i,j,n) with mass 1/(n-1)^2.
enum class Walk { TT2R, Cycles3, TPrime };

std::string to_string(Walk walk);
Walk parse_walk(std::string_view text);  // "tt2r", "cycles3", "tprime"

// Smallest n for which the closed-form spectrum of the walk is available.
int min_formula_n(Walk walk);

enum class Variant { Whole, Plus, Minus };
std::string to_string(Variant variant);  // "whole", "plus", "minus"

// Irreducible A_n-module label: a fat shape (Whole) or a self-conjugate
// shape with a sign (Plus/Minus).
struct IrrepLabel {
  Partition shape;
  Variant variant = Variant::Whole;

  std::string to_string() const;  // "(3,1)", "(2,2)+", "(2,2)-"
  friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

// Parses "SHAPE", "SHAPE+" or "SHAPE-". A thin shape is replaced by its
// fat conjugate, since both restrict to the same A_n-module.
IrrepLabel parse_irrep(std::string_view text);

// Throws std::invalid_argument unless the variant matches the shape class.
void validate_label(const IrrepLabel& label);

// All irreducible A_n-modules, fat shapes first in reverse-lex order with
// self-conjugate shapes contributing a consecutive Plus/Minus pair.
std::vector<IrrepLabel> irreducible_labels(int n);
BigInt irrep_dimension(const IrrepLabel& label);

// Exact big-integer count where affordable, always with a natural log.
struct Multiplicity {
  std::optional<BigInt> exact;
  double log_value = -std::numeric_limits<double>::infinity();

  static Multiplicity from_exact(const BigInt& value);
  static Multiplicity from_log(double log_value);

  bool is_zero() const;
  double to_double() const;
  Multiplicity& operator+=(const Multiplicity& other);
  // Exact digits, or "log:<value>" when only the logarithm is kept.
  std::string to_string() const;
};

double log_of(const BigInt& value);

// Sizes up to this bound keep exact multiplicities.
inline constexpr int kExactMultiplicityMaxN = 20;

struct SpectrumEntry {
  Rational eigenvalue;
  Multiplicity multiplicity;
};

struct IrrepSpectrum {
  IrrepLabel label;
  std::vector<SpectrumEntry> entries;  // distinct eigenvalues, descending
};

// 2x2 upper-triangular P' block with diagonal (a^2, b^2) and corner (a+b)/kappa.
struct Block {
  Rational a;
  Rational b;
  Rational kappa;
  Multiplicity multiplicity;
};

struct BlockSpectrum {
  IrrepLabel label;
  std::vector<SpectrumEntry> singles;
  std::vector<Block> blocks;

  // Flattened eigenvalue multiset (each block contributes a^2 and b^2).
  IrrepSpectrum eigenvalues() const;
};

// Per-group eigenvalues, shared by spectra and the analysis sums.
Rational tt2r_eigenvalue(const CornerPairGroup& group, int n);
Rational tprime_single_eigenvalue(const CornerPairGroup& group, int n);
// C_lambda from the content identity, exact.
Rational three_cycle_eigenvalue(const Partition& lambda);

IrrepSpectrum tt2r_spectrum(const IrrepLabel& label, int n);
IrrepSpectrum three_cycle_spectrum(const IrrepLabel& label, int n);
BlockSpectrum tprime_blocks(const IrrepLabel& label, int n);
IrrepSpectrum walk_spectrum(Walk walk, const IrrepLabel& label, int n);

// Eigenvalue multiset indexed by all of Std(lambda) for any shape.
std::vector<SpectrumEntry> std_indexed_spectrum(Walk walk, const Partition& lambda);

// Spectrum of the walk operator on the whole group algebra of A_n.
std::vector<SpectrumEntry> regular_spectrum_aggregate(Walk walk, int n);

// Adjacency spectrum of the alternating group graph AG_n (n >= 3).
std::vector<SpectrumEntry> ag_spectrum(int n);

}  // namespace walkspectra
