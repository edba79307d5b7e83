#pragma once

#include "walkspectra/spectra.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace walkspectra {

// One-line notation with 0-based images: p[i] is the image of i.
using Permutation = std::vector<int>;

// (a * b)(i) = a[b[i]]: b acts first.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
int permutation_sign(const Permutation& p);
Permutation identity_permutation(int n);
// Cycle written with 1-based symbols, e.g. cycle_permutation(5, {1, 2, 3}).
Permutation cycle_permutation(int n, std::initializer_list<int> symbols);
int fixed_points(const Permutation& p);

// A_n with elements ranked by the lexicographic order of their one-line
// notation. Lexicographic neighbours 2k, 2k+1 of S_n differ by swapping the
// last two entries, so exactly one of them is even and rank = floor(r/2).
class AlternatingGroup {
 public:
  explicit AlternatingGroup(int n);  // 3 <= n <= 9

  int n() const { return n_; }
  std::size_t size() const { return size_; }
  std::size_t rank(const Permutation& p) const;
  Permutation unrank(std::size_t index) const;

  // table[x] = rank(x * s).
  std::vector<std::uint32_t> right_multiplication_table(const Permutation& s) const;

 private:
  int n_;
  std::size_t size_;
  std::vector<std::size_t> factorial_;
};

struct MeasureAtom {
  Permutation element;
  double mass;
};

// Support of the walk measure with masses (sums to 1).
std::vector<MeasureAtom> walk_atoms(Walk walk, int n);

using GroupDistribution = std::vector<double>;  // indexed by AlternatingGroup rank
using GroupAlgebraElement = std::vector<double>;

GroupDistribution walk_measure(Walk walk, int n);

// Repeated right multiplication by a measure, using precomputed tables.
class ConvolutionOperator {
 public:
  ConvolutionOperator(Walk walk, int n);
  const AlternatingGroup& group() const { return group_; }
  void step(const GroupDistribution& in, GroupDistribution& out) const;

 private:
  AlternatingGroup group_;
  std::vector<double> masses_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

GroupDistribution distribution_at(Walk walk, int n, int k, std::size_t start_rank = 0);
double tv_to_uniform(const GroupDistribution& dist);
double exact_tv(Walk walk, int n, int k);
// TV distances for k = 0..kmax from one convolution pass.
std::vector<double> exact_tv_curve(Walk walk, int n, int kmax, std::size_t start_rank = 0);

// Exact rational TV distance: numerator / denominator.
struct ExactTv {
  BigInt numerator;
  BigInt denominator;
  double to_double() const;
  // Exact comparison a <= b.
  friend bool operator<=(const ExactTv& a, const ExactTv& b) {
    return a.numerator * b.denominator <= b.numerator * a.denominator;
  }
};

// TV distances for k = 0..kmax in exact integer arithmetic (n <= 7). Every
// measure has rational masses w_s / D with integer w_s, so D^k * gamma^{*k}
// stays integral.
std::vector<ExactTv> exact_tv_curve_rational(Walk walk, int n, int kmax);

// Sorted (ascending) eigenvalues of the dense transition matrix on A_n.
std::vector<double> brute_spectrum(Walk walk, int n);
// Sorted eigenvalues of the adjacency matrix of AG_n, generators (1,i,2), (1,2,i).
std::vector<double> brute_ag_spectrum(int n);

struct PlancherelResult {
  double lhs;  // sum_x phi(x^-1) psi(x)
  double rhs;  // Tr(phi(R) psi(R)) / |G|
  double residual;
};

// R(g) acts on the group algebra by h -> h g^{-1}, realised densely (n <= 6).
PlancherelResult plancherel_check(const GroupAlgebraElement& phi, const GroupAlgebraElement& psi, int n);

struct AlgebraReport {
  bool yjm_ok = false;              // (n-1)^2 P'_n == J_n^2
  bool pn_ok = false;               // (2n-3) P_n == (1,2)(n-1,n)(J_{n-1} + J_n), n > 3
  bool commutator_nonzero = false;  // P_n P'_n != P'_n P_n
};

// Exact integer group-algebra arithmetic in Z[S_n] with
// J_i = (1,2)((1,i) + ... + (i-1,i)).
AlgebraReport algebra_identity_checks(int n);

// |G| * sum_g (A^{*kA}(g) - B^{*kB}(g))^2, which by Plancherel equals
// sum_rho d_rho Tr(A(rho)^kA - B(rho)^kB)^2.
double brute_comparison_sum(Walk a, int ka, Walk b, int kb, int n);

// Tr((M_A^kA - M_B^kB)^2) with dense transition matrices (n <= 6).
double dense_power_trace_difference(Walk a, int ka, Walk b, int kb, int n);

}  // namespace walkspectra
