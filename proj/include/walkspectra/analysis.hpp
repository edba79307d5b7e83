#pragma once

#include "walkspectra/log_accumulator.hpp"
#include "walkspectra/spectra.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace walkspectra {

// d_TV(Poi(la), Poi(lb)) by direct series summation.
double poisson_tv(double la, double lb);
// Limit profile f(c) = d_TV(Poi(1 + e^{-c}), Poi(1)).
double limit_profile_f(double c);
// 1 - d_TV(Poi(la), Poi(lb)) without cancellation, so it stays resolvable
// where the distance itself rounds to 1.
double poisson_tv_complement(double la, double lb);
double limit_profile_complement(double c);

// Shifted:  steps = ceil(coef * (ln n + c)), the default.
// Linear:   steps = ceil(coef * ln n + c * n).
// coef is n - 3/2 (tt2r), n/3 (cycles3), (n-1)/2 (tprime).
enum class TimeForm { Shifted, Linear };
std::string to_string(TimeForm form);
// Accepts "shifted" and "linear", plus the aliases "section4" and "theorem1".
TimeForm parse_time_form(std::string_view text);

double schedule_coefficient(Walk walk, int n);
double schedule_tau(Walk walk, int n, double c, TimeForm form = TimeForm::Shifted);
std::int64_t schedule(Walk walk, int n, double c, TimeForm form = TimeForm::Shifted);

// (1/2) sqrt(sum over nontrivial eigenvalues of multiplicity * eps^{2k}),
// built once from the regular-representation spectrum.
class SpectralBound {
 public:
  SpectralBound(Walk walk, int n);
  double at(std::int64_t k) const;

 private:
  std::vector<double> log_abs_;  // log |eps|, -inf for eps == 0
  std::vector<double> log_mult_;
};

double spectral_tv_upper_bound(Walk walk, int n, std::int64_t k);

// Exact trace of (A^{N1} - B^{N2})^2 where A = (a'+b') * swap and B is the
// upper-triangular 2x2 block with diagonal (a^2, b^2) and corner (a+b)/kappa,
// together with the bound a^{4 N2} + b^{4 N2} + 2 (a'+b')^{2 N1}.
struct TwoByTwoTrace {
  double trace;
  double bound;
};
TwoByTwoTrace two_by_two_trace(double a, double b, double a_prime, double b_prime, double kappa,
                               std::int64_t n1, std::int64_t n2);

// Log-domain form used by the sums: s = a' + b'.
SignedLog two_by_two_trace_log(double a, double b, double s, double kappa, std::int64_t n1, std::int64_t n2);

enum class Pair { PQ, PPprime };
std::string to_string(Pair pair);
Pair parse_pair(std::string_view text);  // "PQ", "PPprime"

// One trace sum  sum_rho d_rho Tr(A(rho)^{kA} - B(rho)^{kB})^2,  optionally
// split by the larger of the first row and first column of the shape.
struct SumRequest {
  Walk walk_a = Walk::TT2R;
  std::int64_t k_a = 0;
  Walk walk_b = Walk::TT2R;
  std::int64_t k_b = 0;
  int split_m = 0;  // 0 disables the split
};

struct SumResult {
  SumRequest request;
  SignedLog total;
  SignedLog low;   // shapes with max(lambda_1, lambda'_1) <= n - M
  SignedLog high;  // shapes with max(lambda_1, lambda'_1) >  n - M
};

// Evaluates every request in one pass over the partitions of n. Work is
// split by first part and reduced in a fixed order, so the result does not
// depend on `threads` (<= 0 means hardware concurrency).
std::vector<SumResult> trace_sums(int n, const std::vector<SumRequest>& requests, int threads = 0);

// The two schedule-driven comparisons: PQ compares cycles3 against tt2r,
// PPprime compares tt2r against tprime, each at its own scheduled steps.
SumRequest comparison_request(Pair pair, int n, double c, int split_m = 0, TimeForm form = TimeForm::Shifted);

struct ComparisonSum {
  Pair pair;
  int n;
  double c;
  int split_m;
  std::int64_t k_first;   // cycles3 (PQ) or tt2r (PPprime)
  std::int64_t k_second;  // tt2r (PQ) or tprime (PPprime)
  double sum;
  double sum1;
  double sum2;
  double log_sum;
};

ComparisonSum comparison_sum(Pair pair, int n, double c, int split_m = 0, int threads = 0,
                             TimeForm form = TimeForm::Shifted);

struct ComparisonConfig {
  Pair pair;
  double c;
  int split_m = 0;
};
std::vector<ComparisonSum> comparison_sums(int n, const std::vector<ComparisonConfig>& configs, int threads = 0,
                                           TimeForm form = TimeForm::Shifted);

// (1/2) sqrt(trace sum) bounding |TV_A - TV_B|.
double tv_comparison_bound(Walk walk_a, std::int64_t k_a, Walk walk_b, std::int64_t k_b, int n, int threads = 0);

// Smallest M >= 1 with sum_{m >= M} e^{-2mc} / m! <= eps / 8.
int choose_M(double c, double eps);

// (n-2) ((n-2)/(n-1))^{2k} + (1/(n-1))^{2k} at k = schedule(tprime, n, c).
double tprime_standard_sector(int n, double c);

}  // namespace walkspectra
