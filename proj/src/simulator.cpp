#include "walkspectra/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace walkspectra {

std::string to_string(SimWalk walk) {
  switch (walk) {
    case SimWalk::TT2R: return "tt2r";
    case SimWalk::Cycles3: return "cycles3";
    case SimWalk::TPrime: return "tprime";
    case SimWalk::Uniform: return "uniform";
  }
  return "?";
}

SimWalk parse_sim_walk(std::string_view text) {
  if (text == "uniform") return SimWalk::Uniform;
  return to_sim_walk(parse_walk(text));
}

SimWalk to_sim_walk(Walk walk) {
  switch (walk) {
    case Walk::TT2R: return SimWalk::TT2R;
    case Walk::Cycles3: return SimWalk::Cycles3;
    case Walk::TPrime: return SimWalk::TPrime;
  }
  return SimWalk::TT2R;
}

namespace {

// perm <- perm * (a b c) with 0-based symbols, where (a b c) sends a to b.
void right_multiply_cycle(Permutation& perm, int a, int b, int c) {
  const int at_a = perm[static_cast<std::size_t>(a)];
  perm[static_cast<std::size_t>(a)] = perm[static_cast<std::size_t>(b)];
  perm[static_cast<std::size_t>(b)] = perm[static_cast<std::size_t>(c)];
  perm[static_cast<std::size_t>(c)] = at_a;
}

}  // namespace

Permutation uniform_even_permutation(int n, CounterRng& rng) {
  Permutation p = identity_permutation(n);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p[static_cast<std::size_t>(i)], p[j]);
  }
  // Composing with a fixed transposition is a bijection between the odd and
  // even halves, so the result is exactly uniform on A_n.
  if (n >= 2 && permutation_sign(p) < 0) std::swap(p[0], p[1]);
  return p;
}

void apply_random_step(SimWalk walk, Permutation& perm, CounterRng& rng) {
  const int n = static_cast<int>(perm.size());
  switch (walk) {
    case SimWalk::TT2R: {
      const std::uint64_t r = rng.uniform_below(static_cast<std::uint64_t>(2 * n - 3));
      if (r == 0) return;
      const int i = static_cast<int>((r - 1) / 2);
      if ((r - 1) % 2 == 0) {
        right_multiply_cycle(perm, i, n - 2, n - 1);  // (i, n-1, n)
      } else {
        right_multiply_cycle(perm, i, n - 1, n - 2);  // (i, n, n-1)
      }
      return;
    }
    case SimWalk::Cycles3: {
      const auto a = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
      auto b = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      auto c = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n - 2)));
      if (c >= std::min(a, b)) ++c;
      if (c >= std::max(a, b)) ++c;
      right_multiply_cycle(perm, a, b, c);
      return;
    }
    case SimWalk::TPrime: {
      const auto kappa = static_cast<std::uint64_t>(n - 1);
      const std::uint64_t r = rng.uniform_below(kappa * kappa);
      if (r < kappa) return;
      const std::uint64_t rest = r - kappa;
      const auto i = static_cast<int>(rest / (kappa - 1));
      auto j = static_cast<int>(rest % (kappa - 1));
      if (j >= i) ++j;
      right_multiply_cycle(perm, i, j, n - 1);  // (i, j, n)
      return;
    }
    case SimWalk::Uniform: perm = uniform_even_permutation(n, rng); return;
  }
}

Permutation run_walk(Walk walk, int n, std::int64_t steps, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("run_walk: need n >= 4");
  CounterRng rng(seed);
  Permutation perm = identity_permutation(n);
  for (std::int64_t s = 0; s < steps; ++s) apply_random_step(to_sim_walk(walk), perm, rng);
  return perm;
}

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const double count = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = values.size() > 1 ? ss / (count - 1.0) : 0.0;
  s.min = values.front();
  s.max = values.back();
  auto quantile = [&](double q) {
    const double pos = q * (count - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.q05 = quantile(0.05);
  s.q25 = quantile(0.25);
  s.median = quantile(0.5);
  s.q75 = quantile(0.75);
  s.q95 = quantile(0.95);
  return s;
}

MarkingTrial marking_trial(int n, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("marking_trial: need n >= 4");
  CounterRng rng(seed);
  DeckState deck;
  deck.card_at.resize(static_cast<std::size_t>(n));
  std::iota(deck.card_at.begin(), deck.card_at.end(), 0);
  deck.marked.assign(static_cast<std::size_t>(n), false);
  const auto top = static_cast<std::size_t>(n - 1);     // position n
  const auto second = static_cast<std::size_t>(n - 2);  // position n-1
  auto mark = [&](std::size_t position) {
    const auto card = static_cast<std::size_t>(deck.card_at[position]);
    if (!deck.marked[card]) {
      deck.marked[card] = true;
      ++deck.marked_count;
    }
  };
  mark(top);

  MarkingTrial trial;
  int previous = deck.marked_count;
  while (deck.marked_count < n) {
    const std::uint64_t r = rng.uniform_below(static_cast<std::uint64_t>(2 * n - 3));
    ++trial.completion_steps;
    if (r == 0) {
      mark(top);
    } else {
      const auto i = static_cast<std::size_t>((r - 1) / 2);
      if ((r - 1) % 2 == 0) {
        // (i, n-1, n): mark card n-1, transpose the top two, swap i and n.
        mark(second);
        std::swap(deck.card_at[top], deck.card_at[second]);
        std::swap(deck.card_at[i], deck.card_at[top]);
      } else {
        // (i, n, n-1): mark card n, transpose the top two, swap i and n-1.
        mark(top);
        std::swap(deck.card_at[top], deck.card_at[second]);
        std::swap(deck.card_at[i], deck.card_at[second]);
      }
      if (deck.marked[static_cast<std::size_t>(deck.card_at[i])]) ++trial.low_position_marks;
    }
    if (deck.marked_count < previous) trial.monotone = false;
    previous = deck.marked_count;
  }
  return trial;
}

MarkingResult marking_experiment(int n, std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("marking_experiment: need trials >= 1");
  MarkingResult result;
  result.n = n;
  std::vector<double> completion;
  std::int64_t total_steps = 0;
  std::int64_t total_marks = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    MarkingTrial trial = marking_trial(n, trial_seed(seed, static_cast<std::uint64_t>(t)));
    completion.push_back(static_cast<double>(trial.completion_steps));
    total_steps += trial.completion_steps;
    total_marks += trial.low_position_marks;
    result.all_monotone = result.all_monotone && trial.monotone;
    result.trials.push_back(trial);
  }
  result.completion = summarize(std::move(completion));
  result.normalized_mean = result.completion.mean / ((n - 1.5) * std::log(static_cast<double>(n)));
  const double low_positions = n - 2.0;
  result.low_mark_rate = static_cast<double>(total_marks) / (static_cast<double>(total_steps) * low_positions);
  result.low_mark_expected = 2.0 / (2.0 * n - 3.0);
  // Pooled count is binomial in the number of non-identity steps.
  const double q = (2.0 * n - 4.0) / (2.0 * n - 3.0);
  result.low_mark_std_error = std::sqrt(q * (1.0 - q) / static_cast<double>(total_steps)) / low_positions;
  return result;
}

std::vector<int> fixed_point_samples(SimWalk walk, int n, std::int64_t steps, std::int64_t trials,
                                     std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("fixed_point_samples: need n >= 4");
  std::vector<int> counts;
  counts.reserve(static_cast<std::size_t>(std::max<std::int64_t>(trials, 0)));
  for (std::int64_t t = 0; t < trials; ++t) {
    CounterRng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    Permutation perm = identity_permutation(n);
    if (walk == SimWalk::Uniform) {
      perm = uniform_even_permutation(n, rng);
    } else {
      for (std::int64_t s = 0; s < steps; ++s) apply_random_step(walk, perm, rng);
    }
    counts.push_back(fixed_points(perm));
  }
  return counts;
}

std::vector<std::int64_t> fixed_point_histogram(SimWalk walk, int n, std::int64_t steps, std::int64_t trials,
                                                std::uint64_t seed) {
  std::vector<std::int64_t> histogram(static_cast<std::size_t>(n) + 1, 0);
  for (int count : fixed_point_samples(walk, n, steps, trials, seed)) ++histogram[static_cast<std::size_t>(count)];
  return histogram;
}

double histogram_poisson_tv(const std::vector<std::int64_t>& histogram, double rate) {
  const double total = static_cast<double>(std::accumulate(histogram.begin(), histogram.end(), std::int64_t{0}));
  double tv = 0.0;
  double poisson_mass = 0.0;
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    const double pk = std::exp(-rate + static_cast<double>(k) * std::log(rate) - std::lgamma(static_cast<double>(k) + 1.0));
    poisson_mass += pk;
    tv += std::fabs(static_cast<double>(histogram[k]) / total - pk);
  }
  tv += std::max(0.0, 1.0 - poisson_mass);  // Poisson mass beyond n
  return 0.5 * tv;
}

GroupDistribution empirical_distribution(Walk walk, int n, std::int64_t steps, std::int64_t samples,
                                         std::uint64_t seed) {
  const AlternatingGroup group(n);
  GroupDistribution dist(group.size(), 0.0);
  for (std::int64_t s = 0; s < samples; ++s) {
    CounterRng rng(trial_seed(seed, static_cast<std::uint64_t>(s)));
    Permutation perm = identity_permutation(n);
    for (std::int64_t k = 0; k < steps; ++k) apply_random_step(to_sim_walk(walk), perm, rng);
    dist[group.rank(perm)] += 1.0;
  }
  for (double& v : dist) v /= static_cast<double>(samples);
  return dist;
}

double empirical_tv_gap(Walk walk, int n, int steps, std::int64_t samples, std::uint64_t seed) {
  const GroupDistribution empirical = empirical_distribution(walk, n, steps, samples, seed);
  const GroupDistribution exact = distribution_at(walk, n, steps);
  double tv = 0.0;
  for (std::size_t g = 0; g < exact.size(); ++g) tv += std::fabs(empirical[g] - exact[g]);
  return 0.5 * tv;
}

}  // namespace walkspectra
