#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace walkspectra {

using BigInt = boost::multiprecision::cpp_int;

// Weakly decreasing list of positive parts. The empty partition (n = 0) is
// allowed so that shapes can be shrunk all the way down during recursions.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  // Accepts "(3,1)", "3,1", "3 1" and "[3,1]".
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int n() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  // 0-based row access; rows beyond the last return 0.
  int row(int i) const { return i < length() ? parts_[i] : 0; }
  int first_part() const { return parts_.empty() ? 0 : parts_.front(); }

  Partition conjugate() const;
  std::string to_string() const;  // "(3,1)"

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

// 1-based box coordinates, content = col - row.
struct Box {
  int row = 1;
  int col = 1;
  int content() const { return col - row; }
  friend bool operator==(const Box&, const Box&) = default;
};

enum class PartitionClass { SelfConjugate, Fat, Thin };

std::string to_string(PartitionClass cls);
PartitionClass classify(const Partition& lambda);
std::pair<Partition, PartitionClass> conjugate_and_classify(const Partition& lambda);

// Partition sizes above this ceiling are rejected (WALKSPECTRA_MAX_N).
int max_partition_n();

// All partitions of n, reverse-lexicographic: (n) first, (1^n) last.
std::vector<Partition> enumerate_partitions(int n);

// Streaming variant of enumerate_partitions that hands the callback a view
// of the parts without materialising the whole list. Same order.
template <class F>
void for_each_partition_parts(int n, F&& visit);

// Streaming over partitions of n whose first part equals `first`, in the
// same relative order as enumerate_partitions.
template <class F>
void for_each_partition_with_first_part(int n, int first, F&& visit);

std::vector<int> hook_lengths(const Partition& lambda);  // row-major
BigInt dimension(const Partition& lambda);
double log_dimension(const Partition& lambda);
double log_dimension(const std::vector<int>& parts);

// Sum and sum of squares of all box contents.
std::int64_t content_sum(const Partition& lambda);
std::int64_t content_square_sum(const Partition& lambda);

// Removable corners listed from the top row down.
std::vector<Box> removable_corners(const Partition& lambda);
Partition remove_box(const Partition& lambda, const Box& box);

enum class CornerRelation { SameRow, SameColumn, Neither };
std::string to_string(CornerRelation relation);

// Which standard tableaux a group counts: all of Std(lambda), or only the
// upper-standard ones (entry 2 sits in box (1,2)).
enum class TableauFilter { All, Upper };

// Standard tableaux of one shape grouped by where n and n-1 sit.
struct CornerPairGroup {
  Box box_n;
  Box box_n1;
  int content_n = 0;
  int content_n1 = 0;
  CornerRelation relation = CornerRelation::Neither;
  double log_count = 0.0;  // -inf when the group is empty
  std::optional<BigInt> exact_count;
};

// Exact counts are attached while d_lambda fits in 512 bits unless
// `with_exact` is false.
std::vector<CornerPairGroup> corner_pair_groups(const Partition& lambda,
                                                TableauFilter filter = TableauFilter::All,
                                                bool with_exact = true);

// Number of upper-standard tableaux of shape lambda, via
// (d + chi(transposition)) / 2 for n >= 2.
BigInt upper_standard_count(const Partition& lambda);

struct StandardTableau {
  Partition shape;
  std::vector<Box> entry_positions;  // entry_positions[v-1] holds value v
  bool is_upper() const;
  std::vector<int> contents() const;
};

// Depth-first enumeration filling 1..n, trying rows from the top. Throws
// std::length_error when d_lambda exceeds `max_count`.
std::vector<StandardTableau> enumerate_standard_tableaux(const Partition& lambda,
                                                         std::uint64_t max_count = 1000000);

// ---------------------------------------------------------------------------

namespace detail {
void check_partition_n(int n);

template <class F>
bool partitions_rec(std::vector<int>& parts, int remaining, int max_part, F& visit) {
  if (remaining == 0) {
    if constexpr (std::is_same_v<decltype(visit(std::as_const(parts))), bool>) {
      return visit(std::as_const(parts));
    } else {
      visit(std::as_const(parts));
      return true;
    }
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    parts.push_back(p);
    const bool keep_going = partitions_rec(parts, remaining - p, p, visit);
    parts.pop_back();
    if (!keep_going) return false;
  }
  return true;
}
}  // namespace detail

template <class F>
void for_each_partition_parts(int n, F&& visit) {
  detail::check_partition_n(n);
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(n));
  detail::partitions_rec(parts, n, n, visit);
}

template <class F>
void for_each_partition_with_first_part(int n, int first, F&& visit) {
  detail::check_partition_n(n);
  if (first < 1 || first > n) return;
  std::vector<int> parts{first};
  parts.reserve(static_cast<std::size_t>(n));
  detail::partitions_rec(parts, n - first, first, visit);
}

}  // namespace walkspectra
