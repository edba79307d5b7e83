#include "walkspectra/spectra.hpp"

#include <doctest.h>

#include <map>

using namespace walkspectra;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::map<Rational, BigInt> as_map(const std::vector<SpectrumEntry>& entries) {
  std::map<Rational, BigInt> m;
  for (const SpectrumEntry& e : entries) {
    REQUIRE(e.multiplicity.exact.has_value());
    m[e.eigenvalue] += *e.multiplicity.exact;
  }
  return m;
}

BigInt total(const std::vector<SpectrumEntry>& entries) {
  BigInt t = 0;
  for (const auto& [value, count] : as_map(entries)) t += count;
  return t;
}

// Per-tableau reading of the tt2r eigenvalue, straight from where n and n-1 sit.
Rational tableau_tt2r_value(const StandardTableau& t, int n) {
  const Box bn = t.entry_positions[static_cast<std::size_t>(n - 1)];
  const Box bn1 = t.entry_positions[static_cast<std::size_t>(n - 2)];
  const Rational magnitude(bn.content() + bn1.content(), 2 * n - 3);
  if (bn.row == bn1.row) return magnitude;
  if (bn.col == bn1.col) return -magnitude;
  return bn.content() > bn1.content() ? magnitude : -magnitude;
}

using Map = std::map<Rational, BigInt>;

}  // namespace

TEST_CASE("irrep labels parse, canonicalise and validate") {
  CHECK(parse_irrep("(3,1)") == IrrepLabel{P({3, 1}), Variant::Whole});
  CHECK(parse_irrep("(2,2)+") == IrrepLabel{P({2, 2}), Variant::Plus});
  CHECK(parse_irrep("(2,2)-") == IrrepLabel{P({2, 2}), Variant::Minus});
  CHECK(parse_irrep("(1,1,1,1)") == IrrepLabel{P({4}), Variant::Whole});
  CHECK(IrrepLabel{P({2, 2}), Variant::Plus}.to_string() == "(2,2)+");
  CHECK_THROWS(validate_label(IrrepLabel{P({2, 2}), Variant::Whole}));
  CHECK_THROWS(validate_label(IrrepLabel{P({3, 1}), Variant::Plus}));
  CHECK_THROWS(validate_label(parse_irrep("(3,1)+")));

  const auto labels4 = irreducible_labels(4);
  REQUIRE(labels4.size() == 4);
  CHECK(labels4[0].to_string() == "(4)");
  CHECK(labels4[1].to_string() == "(3,1)");
  CHECK(labels4[2].to_string() == "(2,2)+");
  CHECK(labels4[3].to_string() == "(2,2)-");
}

TEST_CASE("sum of squared irrep dimensions is |A_n|") {
  for (int n = 2; n <= 30; ++n) {
    BigInt s = 0;
    for (const IrrepLabel& label : irreducible_labels(n)) s += irrep_dimension(label) * irrep_dimension(label);
    CHECK(s == factorial(n) / 2);
  }
}

TEST_CASE("tt2r spectra of small modules") {
  for (int n = 4; n <= 9; ++n) CHECK(as_map(tt2r_spectrum({P({n}), Variant::Whole}, n).entries) == Map{{Rational(1), 1}});
  CHECK(as_map(tt2r_spectrum({P({3, 1}), Variant::Whole}, 4).entries) ==
        Map{{Rational(-1, 5), 1}, {Rational(1, 5), 1}, {Rational(3, 5), 1}});
  CHECK(as_map(tt2r_spectrum({P({2, 2}), Variant::Plus}, 4).entries) == Map{{Rational(-1, 5), 1}});
  CHECK(as_map(tt2r_spectrum({P({2, 2}), Variant::Minus}, 4).entries) == Map{{Rational(-1, 5), 1}});
  CHECK_THROWS_AS(tt2r_spectrum({P({2, 1}), Variant::Whole}, 3), std::invalid_argument);
  CHECK_THROWS_AS(tt2r_spectrum({P({3, 1}), Variant::Whole}, 5), std::invalid_argument);
}

TEST_CASE("entries are listed in descending order") {
  const auto s = tt2r_spectrum({P({4, 2, 1}), Variant::Whole}, 7);
  for (std::size_t i = 1; i < s.entries.size(); ++i) CHECK(s.entries[i - 1].eigenvalue > s.entries[i].eigenvalue);
}

TEST_CASE("tt2r module spectra match a per-tableau reading") {
  for (int n = 4; n <= 9; ++n) {
    for (const IrrepLabel& label : irreducible_labels(n)) {
      Map expected;
      for (const StandardTableau& t : enumerate_standard_tableaux(label.shape)) {
        if (label.variant != Variant::Whole && !t.is_upper()) continue;
        expected[tableau_tt2r_value(t, n)] += 1;
      }
      const auto got = as_map(tt2r_spectrum(label, n).entries);
      CHECK(got == expected);
      CHECK(total(tt2r_spectrum(label, n).entries) == irrep_dimension(label));
    }
  }
}

TEST_CASE("self-conjugate shapes: Std multiset is twice the upper-standard one") {
  for (int n = 4; n <= 10; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      if (classify(lambda) != PartitionClass::SelfConjugate) continue;
      Map std_count;
      Map upper_count;
      for (const StandardTableau& t : enumerate_standard_tableaux(lambda)) {
        const Rational v = tableau_tt2r_value(t, n);
        std_count[v] += 1;
        if (t.is_upper()) upper_count[v] += 1;
      }
      for (auto& [v, c] : upper_count) c *= 2;
      CHECK(std_count == upper_count);
      Map doubled = as_map(tt2r_spectrum({lambda, Variant::Plus}, n).entries);
      for (auto& [v, c] : doubled) c *= 2;
      CHECK(as_map(std_indexed_spectrum(Walk::TT2R, lambda)) == doubled);
    }
  }
}

TEST_CASE("tt2r eigenvalues lie in [-1,1] and Neither pairs are sign-balanced") {
  for (int n = 4; n <= 14; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      Rational signed_neither(0);
      for (const CornerPairGroup& g : corner_pair_groups(lambda)) {
        const Rational v = tt2r_eigenvalue(g, n);
        CHECK(v <= Rational(1));
        CHECK(v >= Rational(-1));
        if (g.relation == CornerRelation::Neither) {
          // Each swapped partner carries the same count and the opposite sign.
          signed_neither = signed_neither + v * Rational(static_cast<std::int64_t>(*g.exact_count));
        }
      }
      CHECK(signed_neither == Rational(0));
    }
  }
}

TEST_CASE("three-cycle spectra") {
  for (int n = 5; n <= 9; ++n) CHECK(as_map(three_cycle_spectrum({P({n}), Variant::Whole}, n).entries) == Map{{Rational(1), 1}});
  CHECK(as_map(three_cycle_spectrum({P({4, 1}), Variant::Whole}, 5).entries) == Map{{Rational(1, 4), 4}});
  const Rational c311 = normalized_three_cycle(P({3, 1, 1}));
  CHECK(as_map(three_cycle_spectrum({P({3, 1, 1}), Variant::Plus}, 5).entries) == Map{{c311, 3}});
  CHECK(as_map(three_cycle_spectrum({P({3, 1, 1}), Variant::Minus}, 5).entries) == Map{{c311, 3}});
  CHECK_THROWS_AS(three_cycle_spectrum({P({3, 1}), Variant::Whole}, 4), FormulaUnavailable);
}

TEST_CASE("tprime blocks") {
  for (int n = 4; n <= 12; ++n) {
    CHECK(as_map(walk_spectrum(Walk::TPrime, {P({n}), Variant::Whole}, n).entries) == Map{{Rational(1), 1}});
    const auto s = walk_spectrum(Walk::TPrime, {P({n - 1, 1}), Variant::Whole}, n);
    const Rational big(n - 2, n - 1);
    const Rational small(1, n - 1);
    CHECK(as_map(s.entries) == Map{{big * big, n - 2}, {small * small, 1}});
  }
  CHECK(as_map(walk_spectrum(Walk::TPrime, {P({3, 1}), Variant::Whole}, 4).entries) ==
        Map{{Rational(1, 9), 1}, {Rational(4, 9), 2}});

  for (int n = 4; n <= 12; ++n) {
    for (const IrrepLabel& label : irreducible_labels(n)) {
      const BlockSpectrum b = tprime_blocks(label, n);
      BigInt dim = 0;
      for (const SpectrumEntry& e : b.singles) dim += *e.multiplicity.exact;
      for (const Block& block : b.blocks) {
        CHECK(block.a != block.b);
        CHECK(block.a > block.b);
        CHECK(block.kappa == Rational(n - 1));
        dim += 2 * *block.multiplicity.exact;
      }
      CHECK(dim == irrep_dimension(label));
      for (const SpectrumEntry& e : b.eigenvalues().entries) {
        CHECK(e.eigenvalue >= Rational(0));
        CHECK(e.eigenvalue <= Rational(1));
      }
    }
  }
}

TEST_CASE("AG_n spectrum") {
  CHECK(as_map(ag_spectrum(4)) == Map{{Rational(4), 1}, {Rational(2), 3}, {Rational(0), 3}, {Rational(-2), 5}});
  for (int n = 3; n <= 12; ++n) {
    const auto s = ag_spectrum(n);
    const auto m = as_map(s);
    CHECK(m.rbegin()->first == Rational(2 * (n - 2)));
    CHECK(m.rbegin()->second == 1);
    CHECK(total(s) == factorial(n) / 2);
    BigInt trace = 0;
    for (const auto& [v, c] : m) {
      CHECK(v.den() == 1);
      CHECK(v >= Rational(-(2 * n - 3) - 1));
      CHECK(v <= Rational(2 * (n - 2)));
      trace += c * v.num();
    }
    if (n <= 7) CHECK(trace == 0);
    // Affine image of the tt2r regular spectrum.
    if (n >= 4) {
      Map mapped;
      for (const auto& [v, c] : as_map(regular_spectrum_aggregate(Walk::TT2R, n))) {
        mapped[Rational(2 * n - 3) * v - Rational(1)] += c;
      }
      CHECK(mapped == m);
    }
  }
  BigInt squares = 0;
  for (const auto& [v, c] : as_map(ag_spectrum(4))) squares += c * v.num() * v.num();
  CHECK(squares == 48);
}

TEST_CASE("regular-representation aggregates") {
  CHECK(as_map(regular_spectrum_aggregate(Walk::TT2R, 4)) ==
        Map{{Rational(1), 1}, {Rational(1, 5), 3}, {Rational(-1, 5), 5}, {Rational(3, 5), 3}});
  for (Walk walk : {Walk::TT2R, Walk::Cycles3, Walk::TPrime}) {
    for (int n = min_formula_n(walk); n <= 16; ++n) {
      const auto agg = as_map(regular_spectrum_aggregate(walk, n));
      BigInt t = 0;
      for (const auto& [v, c] : agg) t += c;
      CHECK(t == factorial(n) / 2);
      CHECK(agg.at(Rational(1)) == 1);
      // Direct sum over irreducible modules weighted by dimension.
      Map direct;
      for (const IrrepLabel& label : irreducible_labels(n)) {
        const BigInt d = irrep_dimension(label);
        for (const auto& [v, c] : as_map(walk_spectrum(walk, label, n).entries)) direct[v] += d * c;
      }
      CHECK(direct == agg);
    }
  }
  CHECK_THROWS_AS(regular_spectrum_aggregate(Walk::Cycles3, 4), FormulaUnavailable);
}

TEST_CASE("large sizes switch multiplicities to the log domain") {
  const auto s = tt2r_spectrum({P({20, 3}), Variant::Whole}, 23);
  REQUIRE_FALSE(s.entries.empty());
  CHECK_FALSE(s.entries[0].multiplicity.exact.has_value());
  CHECK(s.entries[0].multiplicity.to_string().rfind("log:", 0) == 0);
  const auto small = tt2r_spectrum({P({3, 1}), Variant::Whole}, 4);
  CHECK(small.entries[0].multiplicity.to_string() == "1");
}
