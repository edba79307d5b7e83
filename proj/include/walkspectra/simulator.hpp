#pragma once

#include "walkspectra/group_oracle.hpp"
#include "walkspectra/rng.hpp"
#include "walkspectra/spectra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace walkspectra {

// Walk choices for simulation; Uniform draws an exactly uniform element of A_n.
enum class SimWalk { TT2R, Cycles3, TPrime, Uniform };
std::string to_string(SimWalk walk);
SimWalk parse_sim_walk(std::string_view text);
SimWalk to_sim_walk(Walk walk);

// Multiplies `perm` on the right by one draw from the walk measure.
void apply_random_step(SimWalk walk, Permutation& perm, CounterRng& rng);
Permutation uniform_even_permutation(int n, CounterRng& rng);

// Product of `steps` independent draws, starting from the identity.
Permutation run_walk(Walk walk, int n, std::int64_t steps, std::uint64_t seed);

struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double q95 = 0.0;
};
SummaryStats summarize(std::vector<double> values);

// The card-marking process for the tt2r shuffle. A deck is a position array
// of cards; the initially marked card is the one at position n.
struct DeckState {
  std::vector<int> card_at;  // 0-based positions
  std::vector<bool> marked;  // indexed by card
  int marked_count = 0;
};

struct MarkingTrial {
  std::int64_t completion_steps = 0;
  // Steps in which a position i <= n-2 received a freshly marked card,
  // summed over all such positions.
  std::int64_t low_position_marks = 0;
  bool monotone = true;  // marked count never decreased
};

MarkingTrial marking_trial(int n, std::uint64_t seed);

struct MarkingResult {
  int n = 0;
  std::vector<MarkingTrial> trials;
  SummaryStats completion;
  double normalized_mean = 0.0;     // mean completion / ((n - 3/2) ln n)
  double low_mark_rate = 0.0;       // pooled per-step, per-position rate
  double low_mark_expected = 0.0;   // 2 / (2n - 3)
  double low_mark_std_error = 0.0;  // under the expected rate
  bool all_monotone = true;
};

// Trial t uses the stream seeded by trial_seed(seed, t).
MarkingResult marking_experiment(int n, std::int64_t trials, std::uint64_t seed);

// Fixed-point count of each trial after `steps` steps; trial t is seeded by
// trial_seed(seed, t). Uniform ignores `steps` and samples A_n directly.
std::vector<int> fixed_point_samples(SimWalk walk, int n, std::int64_t steps, std::int64_t trials,
                                     std::uint64_t seed);
// Histogram of fixed-point counts (index 0..n) after `steps` steps.
std::vector<std::int64_t> fixed_point_histogram(SimWalk walk, int n, std::int64_t steps, std::int64_t trials,
                                                std::uint64_t seed);

// TV distance between the histogram (normalised) and Poi(rate) on 0..n plus
// the lumped upper tail.
double histogram_poisson_tv(const std::vector<std::int64_t>& histogram, double rate);

// Empirical distribution of the walk on A_n after `steps` steps, and its TV
// distance to the exact convolution.
GroupDistribution empirical_distribution(Walk walk, int n, std::int64_t steps, std::int64_t samples,
                                         std::uint64_t seed);
double empirical_tv_gap(Walk walk, int n, int steps, std::int64_t samples, std::uint64_t seed);

}  // namespace walkspectra
