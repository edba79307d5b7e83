#include "walkspectra/analysis.hpp"

#include "walkspectra/limits.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace walkspectra {

double poisson_tv(double la, double lb) {
  if (!(la > 0.0) || !(lb > 0.0)) throw std::invalid_argument("poisson_tv: rates must be positive");
  // Near-disjoint laws: the complement is a sum of small positive terms and
  // gives a value that is monotone in the rates down to the last ulp.
  const double complement = poisson_tv_complement(la, lb);
  if (complement < 0.5) return 1.0 - complement;
  const double mu = std::max(la, lb);
  double total = 0.0;
  for (long k = 0;; ++k) {
    const double lk = std::lgamma(static_cast<double>(k) + 1.0);
    const double pa = std::exp(-la + k * std::log(la) - lk);
    const double pb = std::exp(-lb + k * std::log(lb) - lk);
    total += std::fabs(pa - pb);
    // Past the mode both tails are dominated by geometric series.
    if (static_cast<double>(k + 1) > 2.0 * mu) {
      const double tail_a = pa * la / (static_cast<double>(k + 1) - la);
      const double tail_b = pb * lb / (static_cast<double>(k + 1) - lb);
      if (tail_a < 1e-15 && tail_b < 1e-15) break;
    }
  }
  // Rounding can push the sum a few ulps past 2 when the laws are nearly disjoint.
  return std::clamp(0.5 * total, 0.0, 1.0);
}

double limit_profile_f(double c) { return poisson_tv(1.0 + std::exp(-c), 1.0); }

double poisson_tv_complement(double la, double lb) {
  if (!(la > 0.0) || !(lb > 0.0)) throw std::invalid_argument("poisson_tv_complement: rates must be positive");
  if (la == lb) return 1.0;
  const double hi = std::max(la, lb);
  const double lo = std::min(la, lb);
  // The pmf of Poi(lo) exceeds that of Poi(hi) exactly for k <= k_star, so
  // 1 - TV = P_hi(K <= k_star) + P_lo(K > k_star), a sum of positive terms.
  const auto k_star = static_cast<long>(std::floor((hi - lo) / std::log(hi / lo)));
  const auto pmf = [](double rate, long k) {
    return std::exp(-rate + static_cast<double>(k) * std::log(rate) - std::lgamma(static_cast<double>(k) + 1.0));
  };
  double head = 0.0;
  for (long k = 0; k <= k_star; ++k) head += pmf(hi, k);
  double tail = 0.0;
  for (long k = k_star + 1;; ++k) {
    const double term = pmf(lo, k);
    tail += term;
    if (term <= 1e-18 * tail || term == 0.0) break;
  }
  return head + tail;
}

double limit_profile_complement(double c) { return poisson_tv_complement(1.0 + std::exp(-c), 1.0); }

std::string to_string(TimeForm form) { return form == TimeForm::Shifted ? "shifted" : "linear"; }

TimeForm parse_time_form(std::string_view text) {
  if (text == "shifted" || text == "section4") return TimeForm::Shifted;
  if (text == "linear" || text == "theorem1") return TimeForm::Linear;
  throw std::invalid_argument("unknown time form '" + std::string(text) + "'");
}

double schedule_coefficient(Walk walk, int n) {
  switch (walk) {
    case Walk::TT2R: return n - 1.5;
    case Walk::Cycles3: return n / 3.0;
    case Walk::TPrime: return 0.5 * (n - 1.0);
  }
  return 0.0;
}

double schedule_tau(Walk walk, int n, double c, TimeForm form) {
  if (n < 2) throw std::invalid_argument("schedule: need n >= 2");
  const double coef = schedule_coefficient(walk, n);
  const double log_n = std::log(static_cast<double>(n));
  return form == TimeForm::Shifted ? coef * (log_n + c) : coef * log_n + c * n;
}

std::int64_t schedule(Walk walk, int n, double c, TimeForm form) {
  const double tau = schedule_tau(walk, n, c, form);
  // A tiny slack keeps exact integers from rounding up through noise.
  const double steps = std::ceil(tau - 1e-9);
  return steps <= 0.0 ? 0 : static_cast<std::int64_t>(steps);
}

SpectralBound::SpectralBound(Walk walk, int n) {
  bool removed_trivial = false;
  for (const SpectrumEntry& e : regular_spectrum_aggregate(walk, n)) {
    Multiplicity m = e.multiplicity;
    if (!removed_trivial && e.eigenvalue == Rational(1)) {
      removed_trivial = true;
      if (m.exact) {
        m = Multiplicity::from_exact(*m.exact - 1);
      } else {
        const SignedLog rest = SignedLog::from_log(1, m.log_value) - SignedLog::from_log(1, 0.0);
        m = Multiplicity::from_log(rest.sign > 0 ? rest.log_magnitude : -std::numeric_limits<double>::infinity());
      }
    }
    if (m.is_zero()) continue;
    const double v = e.eigenvalue.to_double();
    log_abs_.push_back(v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::fabs(v)));
    log_mult_.push_back(m.log_value);
  }
}

double SpectralBound::at(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("SpectralBound: k must be >= 0");
  SignedLogAccumulator acc;
  for (std::size_t i = 0; i < log_abs_.size(); ++i) {
    if (k == 0) {
      acc.add(SignedLog::from_log(1, log_mult_[i]));
    } else if (log_abs_[i] != -std::numeric_limits<double>::infinity()) {
      acc.add(SignedLog::from_log(1, log_mult_[i] + 2.0 * static_cast<double>(k) * log_abs_[i]));
    }
  }
  const SignedLog total = acc.value();
  if (total.sign <= 0) return 0.0;
  return std::exp(0.5 * total.log_magnitude - std::log(2.0));
}

double spectral_tv_upper_bound(Walk walk, int n, std::int64_t k) { return SpectralBound(walk, n).at(k); }

SignedLog two_by_two_trace_log(double a, double b, double s, double kappa, std::int64_t n1, std::int64_t n2) {
  if (!(kappa > 0.0)) throw std::invalid_argument("two_by_two_trace: kappa must be positive");
  if (a == b) throw std::invalid_argument("two_by_two_trace: a == b is not allowed");
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("two_by_two_trace: exponents must be >= 0");
  const SignedLog t = SignedLog::from_double(s).pow(n1);
  const SignedLog p = SignedLog::from_double(a).pow(2 * n2);
  const SignedLog q = SignedLog::from_double(b).pow(2 * n2);
  SignedLogAccumulator acc;
  if (n1 % 2 == 0) {
    // A^{N1} = t I, so the difference is upper triangular.
    acc.add((t - p).square());
    acc.add((t - q).square());
  } else {
    // A^{N1} = t swap; B^{N2} has corner x = (q - p) / (kappa (b - a)).
    const SignedLog x = (q - p) * SignedLog::from_double(1.0 / (kappa * (b - a)));
    const SignedLog two = SignedLog::from_double(2.0);
    acc.add(p.square());
    acc.add(q.square());
    acc.add(two * t.square());
    acc.add(-(two * t * x));
  }
  return acc.value();
}

TwoByTwoTrace two_by_two_trace(double a, double b, double a_prime, double b_prime, double kappa,
                               std::int64_t n1, std::int64_t n2) {
  const double s = a_prime + b_prime;
  const SignedLog trace = two_by_two_trace_log(a, b, s, kappa, n1, n2);
  SignedLogAccumulator bound;
  bound.add(SignedLog::from_double(a).pow(4 * n2));
  bound.add(SignedLog::from_double(b).pow(4 * n2));
  bound.add(SignedLog::from_double(2.0) * SignedLog::from_double(s).pow(2 * n1));
  return {trace.to_double(), bound.to_double()};
}

std::string to_string(Pair pair) { return pair == Pair::PQ ? "PQ" : "PPprime"; }

Pair parse_pair(std::string_view text) {
  if (text == "PQ") return Pair::PQ;
  if (text == "PPprime") return Pair::PPprime;
  throw std::invalid_argument("unknown pair '" + std::string(text) + "'");
}

namespace {

struct GroupData {
  int content_n;
  int content_n1;
  CornerRelation relation;
  double log_count;
};

// Everything the trace sums need about one shape.
struct ShapeData {
  int n = 0;
  int canonical_first = 0;  // max(lambda_1, lambda'_1)
  double log_d = 0.0;
  SignedLog three_cycle;  // C_lambda
  std::vector<GroupData> groups;
};

class ShapeAnalyzer {
 public:
  explicit ShapeAnalyzer(int n) : n_(n), log_(static_cast<std::size_t>(2 * n + 2), 0.0) {
    for (std::size_t k = 1; k < log_.size(); ++k) log_[k] = std::log(static_cast<double>(k));
    log_factorial_ = std::lgamma(static_cast<double>(n) + 1.0);
  }

  void analyze(const std::vector<int>& parts, ShapeData& out) {
    parts_ = parts;
    const int width = parts_.front();
    conj_.assign(static_cast<std::size_t>(width), 0);
    for (int p : parts_) {
      for (int j = 0; j < p; ++j) ++conj_[static_cast<std::size_t>(j)];
    }
    out.n = n_;
    out.canonical_first = std::max(width, static_cast<int>(parts_.size()));
    double log_d = log_factorial_;
    std::int64_t square_sum = 0;
    for (int i = 0; i < static_cast<int>(parts_.size()); ++i) {
      for (int j = 0; j < parts_[static_cast<std::size_t>(i)]; ++j) {
        log_d -= log_[static_cast<std::size_t>(hook(i, j))];
        square_sum += static_cast<std::int64_t>(j - i) * (j - i);
      }
    }
    out.log_d = log_d;
    const std::int64_t nn = n_;
    const std::int64_t num = 3 * (2 * square_sum - nn * (nn - 1));
    const double den = 2.0 * static_cast<double>(nn) * static_cast<double>(nn - 1) * static_cast<double>(nn - 2);
    out.three_cycle = num == 0 ? SignedLog::zero()
                               : SignedLog::from_log(num > 0 ? 1 : -1,
                                                     std::log(std::fabs(static_cast<double>(num))) - std::log(den));
    out.groups.clear();
    for (int r = 0; r < static_cast<int>(parts_.size()); ++r) {
      if (!removable(r)) continue;
      const int c = parts_[static_cast<std::size_t>(r)] - 1;
      const double log_d1 = log_d + removal_delta(r, c, n_);
      remove(r);
      for (int r2 = 0; r2 < static_cast<int>(parts_.size()); ++r2) {
        if (!removable(r2) || parts_[static_cast<std::size_t>(r2)] == 0) continue;
        const int c2 = parts_[static_cast<std::size_t>(r2)] - 1;
        GroupData g;
        g.content_n = c - r;
        g.content_n1 = c2 - r2;
        g.relation = r == r2 ? CornerRelation::SameRow : (c == c2 ? CornerRelation::SameColumn : CornerRelation::Neither);
        g.log_count = log_d1 + removal_delta(r2, c2, n_ - 1);
        out.groups.push_back(g);
      }
      restore(r);
    }
  }

 private:
  int row_length(int i) const { return i < static_cast<int>(parts_.size()) ? parts_[static_cast<std::size_t>(i)] : 0; }
  int hook(int i, int j) const {
    return parts_[static_cast<std::size_t>(i)] - j + conj_[static_cast<std::size_t>(j)] - i - 1;
  }
  bool removable(int r) const { return row_length(r) > 0 && row_length(r) > row_length(r + 1); }
  // log d_{lambda - box} - log d_lambda for the corner (r, c) of a shape of size m.
  double removal_delta(int r, int c, int m) const {
    double delta = -log_[static_cast<std::size_t>(m)];
    for (int j = 0; j < c; ++j) {
      const int h = hook(r, j);
      delta += log_[static_cast<std::size_t>(h)] - log_[static_cast<std::size_t>(h - 1)];
    }
    for (int i = 0; i < r; ++i) {
      const int h = hook(i, c);
      delta += log_[static_cast<std::size_t>(h)] - log_[static_cast<std::size_t>(h - 1)];
    }
    return delta;
  }
  void remove(int r) {
    const int c = --parts_[static_cast<std::size_t>(r)];
    --conj_[static_cast<std::size_t>(c)];
  }
  void restore(int r) {
    const int c = parts_[static_cast<std::size_t>(r)]++;
    ++conj_[static_cast<std::size_t>(c)];
  }

  int n_;
  std::vector<double> log_;
  double log_factorial_ = 0.0;
  std::vector<int> parts_;
  std::vector<int> conj_;
};

// A request with its walks put in a fixed order so that swapping the two
// sides gives bit-identical sums.
struct PreparedRequest {
  Walk first;
  std::int64_t k_first;
  Walk second;
  std::int64_t k_second;
  int split_m;
};

PreparedRequest prepare(const SumRequest& r) {
  const auto key_a = std::make_pair(static_cast<int>(r.walk_a), r.k_a);
  const auto key_b = std::make_pair(static_cast<int>(r.walk_b), r.k_b);
  if (key_b < key_a) return {r.walk_b, r.k_b, r.walk_a, r.k_a, r.split_m};
  return {r.walk_a, r.k_a, r.walk_b, r.k_b, r.split_m};
}

double tt2r_value(const GroupData& g, int n) {
  const double s = static_cast<double>(g.content_n + g.content_n1) / (2.0 * n - 3.0);
  switch (g.relation) {
    case CornerRelation::SameRow: return s;
    case CornerRelation::SameColumn: return -s;
    case CornerRelation::Neither: return g.content_n > g.content_n1 ? s : -s;
  }
  return s;
}

// Eigenvalue power for walks that act diagonally per group.
SignedLog diagonal_power(Walk walk, std::int64_t k, const ShapeData& shape, const GroupData& g) {
  if (walk == Walk::Cycles3) return shape.three_cycle.pow(k);
  return SignedLog::from_double(tt2r_value(g, shape.n)).pow(k);
}

SignedLog tprime_diag_power(std::int64_t k, int content, int n) {
  return SignedLog::from_double(static_cast<double>(content) / (n - 1.0)).pow(2 * k);
}

// sum over Std(lambda) of the trace contribution, without the d_lambda weight.
SignedLog shape_trace(const PreparedRequest& req, const ShapeData& shape) {
  SignedLogAccumulator acc;
  const int n = shape.n;
  const bool first_tprime = req.first == Walk::TPrime;
  const bool second_tprime = req.second == Walk::TPrime;
  for (const GroupData& g : shape.groups) {
    const SignedLog weight = SignedLog::from_log(1, g.log_count);
    if (!first_tprime && !second_tprime) {
      const SignedLog diff = diagonal_power(req.first, req.k_first, shape, g) -
                             diagonal_power(req.second, req.k_second, shape, g);
      acc.add(weight * diff.square());
      continue;
    }
    if (g.relation != CornerRelation::Neither) {
      auto single = [&](Walk w, std::int64_t k) {
        return w == Walk::TPrime ? tprime_diag_power(k, g.content_n, n) : diagonal_power(w, k, shape, g);
      };
      const SignedLog diff = single(req.first, req.k_first) - single(req.second, req.k_second);
      acc.add(weight * diff.square());
      continue;
    }
    // One 2x2 block per unordered pair; the partner group has the same count.
    if (g.content_n < g.content_n1) continue;
    SignedLog block;
    if (first_tprime && second_tprime) {
      const SignedLog dp = tprime_diag_power(req.k_first, g.content_n, n) - tprime_diag_power(req.k_second, g.content_n, n);
      const SignedLog dq = tprime_diag_power(req.k_first, g.content_n1, n) - tprime_diag_power(req.k_second, g.content_n1, n);
      block = dp.square() + dq.square();
    } else {
      const Walk other = first_tprime ? req.second : req.first;
      const std::int64_t k_other = first_tprime ? req.k_second : req.k_first;
      const std::int64_t k_t = first_tprime ? req.k_first : req.k_second;
      const double a = static_cast<double>(g.content_n) / (n - 1.0);
      const double b = static_cast<double>(g.content_n1) / (n - 1.0);
      if (other == Walk::Cycles3) {
        const SignedLog ck = shape.three_cycle.pow(k_other);
        block = (ck - tprime_diag_power(k_t, g.content_n, n)).square() +
                (ck - tprime_diag_power(k_t, g.content_n1, n)).square();
      } else {
        const double s = static_cast<double>(g.content_n + g.content_n1) / (2.0 * n - 3.0);
        block = two_by_two_trace_log(a, b, s, n - 1.0, k_other, k_t);
      }
    }
    acc.add(weight * block);
  }
  return acc.value();
}

struct BucketTotals {
  std::vector<SignedLogAccumulator> low;
  std::vector<SignedLogAccumulator> high;
};

}  // namespace

std::vector<SumResult> trace_sums(int n, const std::vector<SumRequest>& requests, int threads) {
  std::vector<PreparedRequest> prepared;
  for (const SumRequest& r : requests) {
    const int need = std::max(min_formula_n(r.walk_a), min_formula_n(r.walk_b));
    if (n < need) throw std::invalid_argument("trace_sums: need n >= " + std::to_string(need));
    if (r.k_a < 0 || r.k_b < 0) throw std::invalid_argument("trace_sums: step counts must be >= 0");
    if (r.split_m < 0) throw std::invalid_argument("trace_sums: split M must be >= 0");
    prepared.push_back(prepare(r));
  }
  detail::check_partition_n(n);

  std::vector<BucketTotals> buckets(static_cast<std::size_t>(n) + 1);
  for (BucketTotals& b : buckets) {
    b.low.resize(prepared.size());
    b.high.resize(prepared.size());
  }
  std::atomic<int> next_first{n};  // large first parts are cheap, start there
  auto worker = [&] {
    ShapeAnalyzer analyzer(n);
    ShapeData shape;
    for (int first = next_first.fetch_sub(1); first >= 1; first = next_first.fetch_sub(1)) {
      BucketTotals& bucket = buckets[static_cast<std::size_t>(first)];
      for_each_partition_with_first_part(n, first, [&](const std::vector<int>& parts) {
        analyzer.analyze(parts, shape);
        // The trivial and sign shapes have eigenvalue 1 for every walk.
        if (shape.canonical_first == n) return;
        // Half of the sum over all shapes equals the sum over A_n-modules.
        const SignedLog weight = SignedLog::from_log(1, shape.log_d - std::log(2.0));
        for (std::size_t i = 0; i < prepared.size(); ++i) {
          const SignedLog term = weight * shape_trace(prepared[i], shape);
          const bool low = prepared[i].split_m > 0 && shape.canonical_first <= n - prepared[i].split_m;
          (low ? bucket.low[i] : bucket.high[i]).add(term);
        }
      });
    }
  };
  const int workers = std::max(1, std::min(threads <= 0 ? default_thread_count() : threads, n));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<SumResult> results;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    SignedLogAccumulator low;
    SignedLogAccumulator high;
    for (int first = 1; first <= n; ++first) {
      low.add(buckets[static_cast<std::size_t>(first)].low[i]);
      high.add(buckets[static_cast<std::size_t>(first)].high[i]);
    }
    SumResult r;
    r.request = requests[i];
    r.low = low.value();
    r.high = high.value();
    SignedLogAccumulator total;
    total.add(r.low);
    total.add(r.high);
    r.total = total.value();
    results.push_back(r);
  }
  return results;
}

SumRequest comparison_request(Pair pair, int n, double c, int split_m, TimeForm form) {
  SumRequest r;
  if (pair == Pair::PQ) {
    r.walk_a = Walk::Cycles3;
    r.walk_b = Walk::TT2R;
  } else {
    r.walk_a = Walk::TT2R;
    r.walk_b = Walk::TPrime;
  }
  r.k_a = schedule(r.walk_a, n, c, form);
  r.k_b = schedule(r.walk_b, n, c, form);
  r.split_m = split_m;
  return r;
}

std::vector<ComparisonSum> comparison_sums(int n, const std::vector<ComparisonConfig>& configs, int threads,
                                           TimeForm form) {
  if (n < 5) throw std::invalid_argument("comparison_sum: need n >= 5");
  std::vector<SumRequest> requests;
  for (const ComparisonConfig& cfg : configs) {
    if (!(cfg.c >= -5.0 && cfg.c <= 5.0)) throw std::invalid_argument("comparison_sum: c must lie in [-5, 5]");
    requests.push_back(comparison_request(cfg.pair, n, cfg.c, cfg.split_m, form));
  }
  const std::vector<SumResult> raw = trace_sums(n, requests, threads);
  std::vector<ComparisonSum> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    ComparisonSum s;
    s.pair = configs[i].pair;
    s.n = n;
    s.c = configs[i].c;
    s.split_m = configs[i].split_m;
    s.k_first = requests[i].k_a;
    s.k_second = requests[i].k_b;
    s.sum = raw[i].total.to_double();
    s.sum1 = raw[i].low.to_double();
    s.sum2 = raw[i].high.to_double();
    s.log_sum = raw[i].total.sign > 0 ? raw[i].total.log_magnitude : -std::numeric_limits<double>::infinity();
    out.push_back(s);
  }
  return out;
}

ComparisonSum comparison_sum(Pair pair, int n, double c, int split_m, int threads, TimeForm form) {
  return comparison_sums(n, {ComparisonConfig{pair, c, split_m}}, threads, form).front();
}

double tv_comparison_bound(Walk walk_a, std::int64_t k_a, Walk walk_b, std::int64_t k_b, int n, int threads) {
  const SumResult r = trace_sums(n, {SumRequest{walk_a, k_a, walk_b, k_b, 0}}, threads).front();
  if (r.total.sign <= 0) return 0.0;
  return std::exp(0.5 * r.total.log_magnitude - std::log(2.0));
}

int choose_M(double c, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("choose_M: eps must be positive");
  const double rate = std::exp(-2.0 * c);
  // Terms e^{-2mc}/m! peak near m = rate; sum far enough past it.
  std::vector<double> log_terms;
  for (long m = 0;; ++m) {
    const double lt = static_cast<double>(m) * -2.0 * c - std::lgamma(static_cast<double>(m) + 1.0);
    log_terms.push_back(lt);
    if (static_cast<double>(m) > 2.0 * rate + 10.0 && lt < std::log(1e-15 * std::min(eps, 1.0)) - 5.0) break;
  }
  // Suffix sums from the far end keep the small terms accurate.
  std::vector<double> tail(log_terms.size() + 1, 0.0);
  for (std::size_t m = log_terms.size(); m-- > 0;) tail[m] = tail[m + 1] + std::exp(log_terms[m]);
  for (std::size_t m = 1; m < tail.size(); ++m) {
    if (tail[m] <= eps / 8.0) return static_cast<int>(m);
  }
  return static_cast<int>(tail.size());
}

double tprime_standard_sector(int n, double c) {
  if (n < 3) throw std::invalid_argument("tprime_standard_sector: need n >= 3");
  const double k = static_cast<double>(schedule(Walk::TPrime, n, c));
  const double kappa = n - 1.0;
  const double main = std::log(n - 2.0) + 2.0 * k * std::log((n - 2.0) / kappa);
  const double minor = -2.0 * k * std::log(kappa);
  return std::exp(main) + std::exp(minor);
}

}  // namespace walkspectra
