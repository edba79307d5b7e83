#include "walkspectra/analysis.hpp"
#include "walkspectra/rng.hpp"
#include "walkspectra/simulator.hpp"

#include <doctest.h>

#include <array>
#include <map>
#include <cmath>

using namespace walkspectra;

TEST_CASE("counter RNG reference stream for seed 42") {
  const std::array<std::uint64_t, 8> expected{
      13679457532755275413ULL, 2949826092126892291ULL,  5139283748462763858ULL, 6349198060258255764ULL,
      701532786141963250ULL,   16015981125662989062ULL, 4028864712777624925ULL, 14769051326987775908ULL};
  CounterRng rng(42);
  for (std::uint64_t expected_value : expected) CHECK(rng.next() == expected_value);
  CHECK(rng.counter() == 8);
  CHECK(CounterRng::output_at(42, 5) == expected[5]);
}

TEST_CASE("counter RNG second fixture and bounded draws") {
  CounterRng rng(1234567);
  CHECK(rng.next() == 6457827717110365317ULL);
  CHECK(rng.next() == 3203168211198807973ULL);
  CHECK(rng.next() == 9817491932198370423ULL);
  CounterRng draws(3);
  std::array<int, 7> counts{};
  for (int i = 0; i < 70000; ++i) {
    const auto v = draws.uniform_below(7);
    REQUIRE(v < 7);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = draws.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(trial_seed(42, 3) == (42ULL ^ 3ULL));
}

TEST_CASE("walk simulation preserves parity and is deterministic") {
  CHECK(run_walk(Walk::TT2R, 7, 0, 1) == identity_permutation(7));
  for (SimWalk walk : {SimWalk::TT2R, SimWalk::Cycles3, SimWalk::TPrime}) {
    CounterRng rng(11);
    Permutation perm = identity_permutation(9);
    bool even = true;
    for (int s = 0; s < 1000000; ++s) {
      apply_random_step(walk, perm, rng);
      if ((s & 0xFFFF) == 0) even = even && permutation_sign(perm) == 1;
    }
    CHECK(even);
    CHECK(permutation_sign(perm) == 1);
  }
  CHECK(run_walk(Walk::Cycles3, 12, 500, 77) == run_walk(Walk::Cycles3, 12, 500, 77));
  CHECK(run_walk(Walk::Cycles3, 12, 500, 77) != run_walk(Walk::Cycles3, 12, 500, 78));
  CHECK_THROWS(run_walk(Walk::TT2R, 3, 1, 1));
}

TEST_CASE("tt2r steps draw only the generating set, uniformly") {
  const int n = 6;
  CounterRng rng(5);
  std::map<Permutation, int> seen;
  const int draws = 90000;
  for (int i = 0; i < draws; ++i) {
    Permutation perm = identity_permutation(n);
    apply_random_step(SimWalk::TT2R, perm, rng);
    ++seen[perm];
  }
  std::map<Permutation, double> expected;
  for (const MeasureAtom& atom : walk_atoms(Walk::TT2R, n)) expected[atom.element] = atom.mass;
  REQUIRE(seen.size() == expected.size());
  for (const auto& [perm, count] : seen) {
    REQUIRE(expected.count(perm) == 1);
    CHECK(static_cast<double>(count) / draws == doctest::Approx(expected[perm]).epsilon(0.05));
  }
}

TEST_CASE("empirical distribution matches the exact convolution") {
  CHECK(empirical_tv_gap(Walk::TT2R, 5, 8, 200000, 42) < 0.01);
  for (Walk walk : {Walk::TT2R, Walk::Cycles3, Walk::TPrime}) {
    for (int k : {2, 5, 10}) CHECK(empirical_tv_gap(walk, 5, k, 200000, 7) < 0.01);
  }
}

TEST_CASE("uniform even permutations are uniform on A_5") {
  const AlternatingGroup g(5);
  std::vector<double> counts(g.size(), 0.0);
  CounterRng rng(8);
  const int samples = 600000;
  for (int i = 0; i < samples; ++i) {
    const Permutation p = uniform_even_permutation(5, rng);
    REQUIRE(permutation_sign(p) == 1);
    counts[g.rank(p)] += 1.0;
  }
  double tv = 0.0;
  for (double c : counts) tv += std::fabs(c / samples - 1.0 / 60.0);
  CHECK(0.5 * tv < 0.01);
}

TEST_CASE("summary statistics") {
  const SummaryStats s = summarize({4.0, 1.0, 3.0, 2.0, 5.0});
  CHECK(s.mean == doctest::Approx(3.0));
  CHECK(s.variance == doctest::Approx(2.5));
  CHECK(s.min == 1.0);
  CHECK(s.max == 5.0);
  CHECK(s.median == doctest::Approx(3.0));
  CHECK(s.q25 == doctest::Approx(2.0));
  CHECK(s.q75 == doctest::Approx(4.0));
  CHECK(s.q05 == doctest::Approx(1.2));
  CHECK(s.q95 == doctest::Approx(4.8));
}

TEST_CASE("marking process") {
  const MarkingResult r = marking_experiment(20, 2000, 9);
  CHECK(r.all_monotone);
  CHECK(r.trials.size() == 2000);
  for (const MarkingTrial& t : r.trials) CHECK(t.completion_steps >= 19);
  CHECK(std::fabs(r.low_mark_rate - r.low_mark_expected) <= 3.0 * r.low_mark_std_error);
  CHECK(r.low_mark_expected == doctest::Approx(2.0 / 37.0));
  // Identical configuration, identical trials.
  const MarkingResult again = marking_experiment(20, 50, 9);
  for (std::size_t t = 0; t < again.trials.size(); ++t) {
    CHECK(again.trials[t].completion_steps == r.trials[t].completion_steps);
    CHECK(again.trials[t].low_position_marks == r.trials[t].low_position_marks);
  }
  CHECK(marking_trial(20, trial_seed(9, 17)).completion_steps == r.trials[17].completion_steps);
}

TEST_CASE("fixed-point histograms") {
  const auto at_zero = fixed_point_histogram(SimWalk::TT2R, 10, 0, 100, 1);
  CHECK(at_zero[10] == 100);
  const auto uniform = fixed_point_histogram(SimWalk::Uniform, 100, 0, 100000, 42);
  CHECK(histogram_poisson_tv(uniform, 1.0) < 0.02);
  const auto samples = fixed_point_samples(SimWalk::Cycles3, 12, 30, 500, 3);
  const auto hist = fixed_point_histogram(SimWalk::Cycles3, 12, 30, 500, 3);
  for (int count : samples) CHECK(hist[static_cast<std::size_t>(count)] > 0);
}

TEST_CASE("fixed points at the tt2r cutoff (diagnostic)") {
  const int n = 100;
  const auto counts = fixed_point_samples(SimWalk::TT2R, n, schedule(Walk::TT2R, n, 0.0), 5000, 42);
  double mean = 0.0;
  for (int c : counts) mean += c;
  mean /= static_cast<double>(counts.size());
  CHECK(mean >= 1.7);
  CHECK(mean <= 2.3);
}
