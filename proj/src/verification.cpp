#include "walkspectra/verification.hpp"

#include "walkspectra/analysis.hpp"
#include "walkspectra/group_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace walkspectra {

OracleCheck parse_oracle_check(std::string_view text) {
  if (text == "spectra") return OracleCheck::Spectra;
  if (text == "plancherel") return OracleCheck::Plancherel;
  if (text == "algebra") return OracleCheck::Algebra;
  if (text == "tv") return OracleCheck::Tv;
  if (text == "all") return OracleCheck::All;
  throw std::invalid_argument("unknown check '" + std::string(text) + "'");
}

double multiset_residual(const std::vector<SpectrumEntry>& formula, const std::vector<double>& brute) {
  std::vector<double> expanded;
  for (const SpectrumEntry& entry : formula) {
    if (!entry.multiplicity.exact) throw std::length_error("multiset_residual: multiplicity too large to expand");
    const auto count = static_cast<std::size_t>(*entry.multiplicity.exact);
    expanded.insert(expanded.end(), count, entry.eigenvalue.to_double());
  }
  if (expanded.size() != brute.size()) return std::numeric_limits<double>::infinity();
  std::sort(expanded.begin(), expanded.end());
  std::vector<double> sorted = brute;
  std::sort(sorted.begin(), sorted.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) worst = std::max(worst, std::fabs(expanded[i] - sorted[i]));
  return worst;
}

namespace {

CheckResult make_result(std::string name, int n, double residual, double tolerance, std::string detail = {}) {
  CheckResult r;
  r.check_name = std::move(name);
  r.n = n;
  r.max_residual = residual;
  r.status = residual <= tolerance ? "pass" : "fail";
  r.detail = std::move(detail);
  return r;
}

CheckResult skipped(std::string name, int n, std::string why) {
  CheckResult r;
  r.check_name = std::move(name);
  r.n = n;
  r.status = "skipped";
  r.detail = std::move(why);
  return r;
}

void spectra_checks(int n, double tolerance, std::vector<CheckResult>& out) {
  for (Walk walk : {Walk::TT2R, Walk::Cycles3, Walk::TPrime}) {
    const std::string name = "spectra:" + to_string(walk);
    if (n < min_formula_n(walk) || n > 7) {
      out.push_back(skipped(name, n, "outside the closed-form/dense range"));
      continue;
    }
    out.push_back(make_result(name, n, multiset_residual(regular_spectrum_aggregate(walk, n), brute_spectrum(walk, n)),
                              tolerance));
  }
  if (n >= 3 && n <= 7) {
    out.push_back(make_result("spectra:ag", n, multiset_residual(ag_spectrum(n), brute_ag_spectrum(n)), tolerance));
  } else {
    out.push_back(skipped("spectra:ag", n, "outside the dense range"));
  }
}

void plancherel_checks(int n, double tolerance, std::vector<CheckResult>& out) {
  if (n < 3 || n > 6) {
    out.push_back(skipped("plancherel", n, "requires 3 <= n <= 6"));
    return;
  }
  const AlternatingGroup group(n);
  std::vector<std::pair<std::string, GroupAlgebraElement>> elements;
  GroupAlgebraElement delta(group.size(), 0.0);
  delta[0] = 1.0;
  elements.emplace_back("delta", delta);
  elements.emplace_back("tt2r", walk_measure(Walk::TT2R, n));
  elements.emplace_back("cycles3", walk_measure(Walk::Cycles3, n));
  elements.emplace_back("tprime", walk_measure(Walk::TPrime, n));
  double worst = 0.0;
  for (const auto& [name_a, phi] : elements) {
    for (const auto& [name_b, psi] : elements) worst = std::max(worst, plancherel_check(phi, psi, n).residual);
  }
  out.push_back(make_result("plancherel", n, worst, tolerance, "all pairs of delta, tt2r, cycles3, tprime"));
}

void algebra_checks(int n, std::vector<CheckResult>& out) {
  if (n < 3 || n > 7) {
    out.push_back(skipped("algebra", n, "requires 3 <= n <= 7"));
    return;
  }
  const AlgebraReport report = algebra_identity_checks(n);
  const bool pn_expected = n > 3;
  const bool commutator_expected = n >= 4;
  auto flag = [&](std::string name, bool ok, std::string detail) {
    CheckResult r;
    r.check_name = std::move(name);
    r.n = n;
    r.status = ok ? "pass" : "fail";
    r.max_residual = ok ? 0.0 : 1.0;
    r.detail = std::move(detail);
    out.push_back(std::move(r));
  };
  flag("algebra:yjm", report.yjm_ok, "(n-1)^2 P' == J_n^2");
  if (pn_expected) {
    flag("algebra:pn", report.pn_ok, "(2n-3) P == (1,2)(n-1,n)(J_{n-1} + J_n)");
  } else {
    out.push_back(skipped("algebra:pn", n, "identity stated for n > 3"));
  }
  flag("algebra:commutator", report.commutator_nonzero == commutator_expected,
       commutator_expected ? "commutator expected nonzero" : "commutator expected zero");
}

void tv_checks(int n, std::vector<CheckResult>& out) {
  constexpr int kMax = 50;
  for (Walk walk : {Walk::TT2R, Walk::Cycles3, Walk::TPrime}) {
    const std::string name = "tv:" + to_string(walk);
    if (n < min_formula_n(walk) || n > 7) {
      out.push_back(skipped(name, n, "outside the closed-form/dense range"));
      continue;
    }
    const std::vector<ExactTv> curve = exact_tv_curve_rational(walk, n, kMax);
    const SpectralBound bound(walk, n);
    int violations = 0;
    double worst_excess = 0.0;
    for (int k = 0; k <= kMax; ++k) {
      const double tv = curve[static_cast<std::size_t>(k)].to_double();
      const double b = bound.at(k);
      // The bound is a double, so compare with a relative slack of one ulp-scale.
      if (tv > b * (1.0 + 1e-12)) {
        ++violations;
        worst_excess = std::max(worst_excess, tv - b);
      }
      if (k > 0 && !(curve[static_cast<std::size_t>(k)] <= curve[static_cast<std::size_t>(k - 1)])) {
        ++violations;
        worst_excess = std::max(worst_excess, tv - curve[static_cast<std::size_t>(k - 1)].to_double());
      }
    }
    CheckResult r;
    r.check_name = name;
    r.n = n;
    r.status = violations == 0 ? "pass" : "fail";
    r.max_residual = worst_excess;
    r.detail = std::to_string(violations) + " violations for k = 0..50";
    out.push_back(std::move(r));
  }
}

}  // namespace

std::vector<CheckResult> run_oracle_checks(int n, OracleCheck which, double tolerance) {
  std::vector<CheckResult> results;
  const bool all = which == OracleCheck::All;
  if (all || which == OracleCheck::Spectra) spectra_checks(n, tolerance, results);
  if (all || which == OracleCheck::Plancherel) plancherel_checks(n, tolerance, results);
  if (all || which == OracleCheck::Algebra) algebra_checks(n, results);
  if (all || which == OracleCheck::Tv) tv_checks(n, results);
  return results;
}

}  // namespace walkspectra
