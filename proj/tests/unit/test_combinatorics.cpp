#include "walkspectra/combinatorics.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace walkspectra;

namespace {

// p(n) by Euler's pentagonal recurrence, independent of the enumerator.
std::vector<long long> partition_counts(int max_n) {
  std::vector<long long> p(static_cast<std::size_t>(max_n) + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= max_n; ++n) {
    long long total = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      const long long sign = (k % 2 == 1) ? 1 : -1;
      total += sign * p[static_cast<std::size_t>(n - g1)];
      if (g2 <= n) total += sign * p[static_cast<std::size_t>(n - g2)];
    }
    p[static_cast<std::size_t>(n)] = total;
  }
  return p;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

}  // namespace

TEST_CASE("partitions of 4 come out in reverse-lexicographic order") {
  const auto parts = enumerate_partitions(4);
  REQUIRE(parts.size() == 5);
  CHECK(parts[0] == P({4}));
  CHECK(parts[1] == P({3, 1}));
  CHECK(parts[2] == P({2, 2}));
  CHECK(parts[3] == P({2, 1, 1}));
  CHECK(parts[4] == P({1, 1, 1, 1}));
}

TEST_CASE("partition counts match the pentagonal recurrence") {
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(10).size() == 42);
  const auto p = partition_counts(30);
  for (int n = 1; n <= 30; ++n) {
    long long streamed = 0;
    for_each_partition_parts(n, [&](const std::vector<int>&) { ++streamed; });
    CHECK(streamed == p[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("enumeration rejects sizes outside the ceiling") {
  CHECK_THROWS(enumerate_partitions(0));
  CHECK_THROWS(enumerate_partitions(max_partition_n() + 1));
}

TEST_CASE("streaming by first part covers each partition once in the global order") {
  for (int n = 1; n <= 14; ++n) {
    std::vector<Partition> streamed;
    for (int first = n; first >= 1; --first) {
      for_each_partition_with_first_part(n, first, [&](const std::vector<int>& v) { streamed.emplace_back(v); });
    }
    CHECK(streamed == enumerate_partitions(n));
  }
}

TEST_CASE("partition parsing and validation") {
  CHECK(Partition::parse("(3,1)") == P({3, 1}));
  CHECK(Partition::parse("3 1") == P({3, 1}));
  CHECK(Partition::parse("[3,1]") == P({3, 1}));
  CHECK(Partition::parse("3,1") == P({3, 1}));
  CHECK(P({3, 1}).to_string() == "(3,1)");
  CHECK(P({3, 1}).n() == 4);
  CHECK_THROWS(P({1, 3}));
  CHECK_THROWS(P({2, 0}));
  CHECK_THROWS(P({-1}));
  CHECK_THROWS(Partition::parse("(3,x)"));
}

TEST_CASE("conjugation and classification") {
  CHECK(conjugate_and_classify(P({2, 2})) == std::make_pair(P({2, 2}), PartitionClass::SelfConjugate));
  CHECK(conjugate_and_classify(P({4})) == std::make_pair(P({1, 1, 1, 1}), PartitionClass::Fat));
  CHECK(conjugate_and_classify(P({1, 1, 1, 1})) == std::make_pair(P({4}), PartitionClass::Thin));
  for (int n = 1; n <= 12; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      const Partition conj = lambda.conjugate();
      CHECK(conj.conjugate() == lambda);
      const PartitionClass a = classify(lambda);
      const PartitionClass b = classify(conj);
      if (a == PartitionClass::SelfConjugate) {
        CHECK(b == PartitionClass::SelfConjugate);
        CHECK(conj == lambda);
      } else {
        CHECK(a != b);
        CHECK(b != PartitionClass::SelfConjugate);
      }
    }
  }
}

TEST_CASE("hook-length dimensions") {
  CHECK(dimension(P({3, 1})) == 3);
  CHECK(dimension(P({2, 2})) == 2);
  for (int n = 1; n <= 8; ++n) CHECK(dimension(P({n})) == 1);
  for (int n = 1; n <= 20; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      const double exact = std::log(dimension(lambda).convert_to<double>());
      const double fast = log_dimension(lambda);
      CHECK(std::fabs(fast - exact) <= 1e-12 * std::max(1.0, exact));
      CHECK(log_dimension(lambda.parts()) == doctest::Approx(fast).epsilon(1e-14));
    }
  }
}

TEST_CASE("dimension equals the number of standard tableaux") {
  for (int n = 1; n <= 10; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      CHECK(BigInt(enumerate_standard_tableaux(lambda).size()) == dimension(lambda));
    }
  }
}

TEST_CASE("dimension identity over fat and self-conjugate shapes") {
  for (int n = 2; n <= 30; ++n) {
    BigInt total = 0;
    for (const Partition& lambda : enumerate_partitions(n)) {
      const PartitionClass cls = classify(lambda);
      const BigInt d = dimension(lambda);
      if (cls == PartitionClass::Fat) total += d * d;
      if (cls == PartitionClass::SelfConjugate) total += 2 * (d / 2) * (d / 2);
    }
    CHECK(total == factorial(n) / 2);
  }
}

TEST_CASE("removable corners") {
  const auto c31 = removable_corners(P({3, 1}));
  REQUIRE(c31.size() == 2);
  CHECK(c31[0] == Box{1, 3});
  CHECK(c31[0].content() == 2);
  CHECK(c31[1] == Box{2, 1});
  CHECK(c31[1].content() == -1);
  for (int n = 1; n <= 6; ++n) {
    const auto cn = removable_corners(P({n}));
    REQUIRE(cn.size() == 1);
    CHECK(cn[0] == Box{1, n});
    CHECK(cn[0].content() == n - 1);
  }
  const auto c22 = removable_corners(P({2, 2}));
  REQUIRE(c22.size() == 1);
  CHECK(c22[0] == Box{2, 2});
  CHECK(c22[0].content() == 0);

  for (int n = 1; n <= 12; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      std::set<int> contents;
      for (const Box& b : removable_corners(lambda)) {
        contents.insert(b.content());
        CHECK_NOTHROW(remove_box(lambda, b));
      }
      CHECK(contents.size() == removable_corners(lambda).size());
    }
  }
  CHECK_THROWS(remove_box(P({3, 1}), Box{1, 2}));
}

TEST_CASE("corner-pair groups of small shapes") {
  const auto g31 = corner_pair_groups(P({3, 1}));
  REQUIRE(g31.size() == 3);
  CHECK(g31[0].content_n == 2);
  CHECK(g31[0].content_n1 == 1);
  CHECK(g31[0].relation == CornerRelation::SameRow);
  CHECK(g31[0].exact_count == BigInt(1));
  CHECK(g31[1].content_n == 2);
  CHECK(g31[1].content_n1 == -1);
  CHECK(g31[1].relation == CornerRelation::Neither);
  CHECK(g31[1].exact_count == BigInt(1));
  CHECK(g31[2].content_n == -1);
  CHECK(g31[2].content_n1 == 2);
  CHECK(g31[2].relation == CornerRelation::Neither);
  CHECK(g31[2].exact_count == BigInt(1));

  const auto gn = corner_pair_groups(P({6}));
  REQUIRE(gn.size() == 1);
  CHECK(gn[0].content_n == 5);
  CHECK(gn[0].content_n1 == 4);
  CHECK(gn[0].relation == CornerRelation::SameRow);
  CHECK(gn[0].exact_count == BigInt(1));

  const auto g22 = corner_pair_groups(P({2, 2}));
  REQUIRE(g22.size() == 2);
  int same_row = 0;
  int same_col = 0;
  for (const auto& g : g22) {
    CHECK(g.content_n == 0);
    CHECK(g.exact_count == BigInt(1));
    if (g.relation == CornerRelation::SameRow) {
      ++same_row;
      CHECK(g.content_n1 == -1);
    }
    if (g.relation == CornerRelation::SameColumn) {
      ++same_col;
      CHECK(g.content_n1 == 1);
    }
  }
  CHECK(same_row == 1);
  CHECK(same_col == 1);
}

TEST_CASE("corner-pair group counts sum to the dimension and respect relations") {
  for (int n = 2; n <= 12; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      BigInt total = 0;
      for (const CornerPairGroup& g : corner_pair_groups(lambda)) {
        REQUIRE(g.exact_count.has_value());
        total += *g.exact_count;
        CHECK(g.log_count == doctest::Approx(std::log(g.exact_count->convert_to<double>())).epsilon(1e-12));
        if (g.relation == CornerRelation::SameRow) CHECK(g.content_n == g.content_n1 + 1);
        if (g.relation == CornerRelation::SameColumn) CHECK(g.content_n == g.content_n1 - 1);
        CHECK(g.content_n == g.box_n.content());
        CHECK(g.content_n1 == g.box_n1.content());
      }
      CHECK(total == dimension(lambda));
    }
  }
}

TEST_CASE("corner-pair groups agree with tableau enumeration, all and upper") {
  for (int n = 2; n <= 9; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      const auto tableaux = enumerate_standard_tableaux(lambda);
      for (TableauFilter filter : {TableauFilter::All, TableauFilter::Upper}) {
        for (const CornerPairGroup& g : corner_pair_groups(lambda, filter)) {
          long long count = 0;
          for (const StandardTableau& t : tableaux) {
            if (filter == TableauFilter::Upper && !t.is_upper()) continue;
            if (t.entry_positions[static_cast<std::size_t>(n - 1)] == g.box_n &&
                t.entry_positions[static_cast<std::size_t>(n - 2)] == g.box_n1) {
              ++count;
            }
          }
          CHECK(g.exact_count == BigInt(count));
        }
      }
    }
  }
}

TEST_CASE("standard tableaux of (3,1) and (2,2)") {
  const auto t31 = enumerate_standard_tableaux(P({3, 1}));
  REQUIRE(t31.size() == 3);
  CHECK(t31[0].is_upper());
  CHECK(t31[1].is_upper());
  CHECK_FALSE(t31[2].is_upper());
  CHECK(t31[0].contents() == std::vector<int>{0, 1, 2, -1});
  CHECK(t31[0].entry_positions[0] == Box{1, 1});

  const auto t22 = enumerate_standard_tableaux(P({2, 2}));
  REQUIRE(t22.size() == 2);
  int upper = 0;
  for (const auto& t : t22) upper += t.is_upper() ? 1 : 0;
  CHECK(upper == 1);
  CHECK_THROWS_AS(enumerate_standard_tableaux(P({6, 5, 4, 3, 2, 1}), 1000), std::length_error);
}

TEST_CASE("tableaux are standard and upper counts match the closed form") {
  for (int n = 2; n <= 10; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      long long upper = 0;
      for (const StandardTableau& t : enumerate_standard_tableaux(lambda)) {
        CHECK(t.entry_positions[0] == Box{1, 1});
        // Rows and columns increase: each box's left and upper neighbours
        // hold smaller entries.
        std::vector<std::vector<int>> grid(static_cast<std::size_t>(lambda.length()));
        for (int r = 0; r < lambda.length(); ++r) grid[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(lambda.row(r)), 0);
        for (int v = 1; v <= n; ++v) {
          const Box b = t.entry_positions[static_cast<std::size_t>(v - 1)];
          grid[static_cast<std::size_t>(b.row - 1)][static_cast<std::size_t>(b.col - 1)] = v;
        }
        for (int r = 0; r < lambda.length(); ++r) {
          for (int c = 0; c < lambda.row(r); ++c) {
            const int v = grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (c > 0) CHECK(grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c - 1)] < v);
            if (r > 0) CHECK(grid[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c)] < v);
          }
        }
        upper += t.is_upper() ? 1 : 0;
      }
      CHECK(upper_standard_count(lambda) == BigInt(upper));
      if (classify(lambda) == PartitionClass::SelfConjugate) CHECK(BigInt(2 * upper) == dimension(lambda));
    }
  }
}

TEST_CASE("removing a box below the first row shrinks the dimension by the hook bound") {
  for (int n = 2; n <= 12; ++n) {
    for (const Partition& lambda : enumerate_partitions(n)) {
      const BigInt d = dimension(lambda);
      for (const Box& b : removable_corners(lambda)) {
        const Partition zeta = remove_box(lambda, b);
        if (zeta.first_part() != lambda.first_part()) continue;
        BigInt bound = d;
        for (int i = 0; i < n - lambda.first_part(); ++i) bound *= 4;
        CHECK(dimension(zeta) * n <= bound);
      }
    }
  }
}
