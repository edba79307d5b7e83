#include "walkspectra/combinatorics.hpp"

#include "walkspectra/limits.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace walkspectra {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
    n_ += parts_[i];
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    // "a^k" repeats part a k times, so (2,1^2) == (2,1,1).
    const auto caret = token.find('^');
    try {
      std::size_t used = 0;
      if (caret == std::string::npos) {
        parts.push_back(std::stoi(token, &used));
        if (used != token.size()) throw std::invalid_argument("trailing characters");
      } else {
        const int part = std::stoi(token.substr(0, caret), &used);
        if (used != caret) throw std::invalid_argument("trailing characters");
        const std::string reps = token.substr(caret + 1);
        const int count = std::stoi(reps, &used);
        if (used != reps.size() || count < 1) throw std::invalid_argument("bad repeat");
        parts.insert(parts.end(), static_cast<std::size_t>(count), part);
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("Partition::parse: bad token '" + token + "'");
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == '(' || ch == ')' || ch == '[' || ch == ']' || ch == ',' || ch == ' ') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  if (parts.empty()) throw std::invalid_argument("Partition::parse: no parts in '" + std::string(text) + "'");
  return Partition(std::move(parts));
}

Partition Partition::conjugate() const {
  std::vector<int> conj(static_cast<std::size_t>(first_part()), 0);
  for (int part : parts_) {
    for (int j = 0; j < part; ++j) ++conj[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(conj));
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

std::string to_string(PartitionClass cls) {
  switch (cls) {
    case PartitionClass::SelfConjugate: return "self-conjugate";
    case PartitionClass::Fat: return "fat";
    case PartitionClass::Thin: return "thin";
  }
  return "?";
}

PartitionClass classify(const Partition& lambda) {
  const Partition conj = lambda.conjugate();
  const int rows = std::max(lambda.length(), conj.length());
  for (int i = 0; i < rows; ++i) {
    if (lambda.row(i) != conj.row(i)) {
      return lambda.row(i) > conj.row(i) ? PartitionClass::Fat : PartitionClass::Thin;
    }
  }
  return PartitionClass::SelfConjugate;
}

std::pair<Partition, PartitionClass> conjugate_and_classify(const Partition& lambda) {
  return {lambda.conjugate(), classify(lambda)};
}

int max_partition_n() { return Limits::from_environment().max_partition_n; }

namespace detail {
void check_partition_n(int n) {
  const int ceiling = max_partition_n();
  if (n < 1 || n > ceiling) {
    throw std::out_of_range("partition size " + std::to_string(n) + " outside supported range 1.." +
                            std::to_string(ceiling));
  }
}
}  // namespace detail

std::vector<Partition> enumerate_partitions(int n) {
  std::vector<Partition> out;
  for_each_partition_parts(n, [&](const std::vector<int>& parts) { out.emplace_back(parts); });
  return out;
}

std::vector<int> hook_lengths(const Partition& lambda) {
  const Partition conj = lambda.conjugate();
  std::vector<int> hooks;
  hooks.reserve(static_cast<std::size_t>(lambda.n()));
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda.row(i); ++j) {
      hooks.push_back(lambda.row(i) - j + conj.row(j) - i - 1);
    }
  }
  return hooks;
}

BigInt dimension(const Partition& lambda) {
  BigInt numerator = 1;
  for (int k = 2; k <= lambda.n(); ++k) numerator *= k;
  BigInt denominator = 1;
  for (int h : hook_lengths(lambda)) denominator *= h;
  return numerator / denominator;
}

double log_dimension(const std::vector<int>& parts) {
  int n = 0;
  for (int p : parts) n += p;
  double result = std::lgamma(static_cast<double>(n) + 1.0);
  // Column heights computed inline so this stays allocation-light.
  const int width = parts.empty() ? 0 : parts.front();
  std::vector<int> conj(static_cast<std::size_t>(width), 0);
  for (int p : parts) {
    for (int j = 0; j < p; ++j) ++conj[static_cast<std::size_t>(j)];
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j = 0; j < parts[i]; ++j) {
      result -= std::log(static_cast<double>(parts[i] - j + conj[static_cast<std::size_t>(j)] -
                                             static_cast<int>(i) - 1));
    }
  }
  return result;
}

double log_dimension(const Partition& lambda) { return log_dimension(lambda.parts()); }

std::int64_t content_sum(const Partition& lambda) {
  std::int64_t total = 0;
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda.row(i); ++j) total += j - i;
  }
  return total;
}

std::int64_t content_square_sum(const Partition& lambda) {
  std::int64_t total = 0;
  for (int i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda.row(i); ++j) total += static_cast<std::int64_t>(j - i) * (j - i);
  }
  return total;
}

std::vector<Box> removable_corners(const Partition& lambda) {
  std::vector<Box> corners;
  for (int i = 0; i < lambda.length(); ++i) {
    if (lambda.row(i) > lambda.row(i + 1)) corners.push_back(Box{i + 1, lambda.row(i)});
  }
  return corners;
}

Partition remove_box(const Partition& lambda, const Box& box) {
  std::vector<int> parts = lambda.parts();
  const int r = box.row - 1;
  if (r < 0 || r >= lambda.length() || parts[static_cast<std::size_t>(r)] != box.col ||
      lambda.row(r + 1) >= box.col) {
    throw std::invalid_argument("remove_box: box is not a removable corner");
  }
  if (--parts[static_cast<std::size_t>(r)] == 0) parts.pop_back();
  return Partition(std::move(parts));
}

std::string to_string(CornerRelation relation) {
  switch (relation) {
    case CornerRelation::SameRow: return "same_row";
    case CornerRelation::SameColumn: return "same_column";
    case CornerRelation::Neither: return "neither";
  }
  return "?";
}

BigInt upper_standard_count(const Partition& lambda) {
  const std::int64_t n = lambda.n();
  if (n < 2) return 0;
  // chi(transposition)/d = 2 * content_sum / (n(n-1)).
  const std::int64_t pairs = n * (n - 1);
  const BigInt numerator = dimension(lambda) * (pairs + 2 * content_sum(lambda));
  return numerator / (2 * pairs);
}

namespace {

// Upper-standard count of tableaux of lambda that put n at beta and n-1 at
// gamma, where mu is what remains once both are removed.
std::pair<double, std::optional<BigInt>> upper_group_count(const Partition& mu, const Box& beta,
                                                           const Box& gamma, bool exact) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const int m = mu.n();
  if (m < 2) {
    // Entry 2 is one of the two removed boxes.
    const Box& holder = m == 1 ? gamma : beta;
    const bool upper = holder == Box{1, 2};
    std::optional<BigInt> count;
    if (exact) count = BigInt(upper ? 1 : 0);
    return {upper ? 0.0 : neg_inf, count};
  }
  const std::int64_t pairs = static_cast<std::int64_t>(m) * (m - 1);
  const std::int64_t weight = pairs + 2 * content_sum(mu);
  std::optional<BigInt> count;
  if (exact) count = upper_standard_count(mu);
  if (weight == 0) return {neg_inf, count};
  const double log_count =
      log_dimension(mu) + std::log(static_cast<double>(weight)) - std::log(2.0 * static_cast<double>(pairs));
  return {log_count, count};
}

}  // namespace

std::vector<CornerPairGroup> corner_pair_groups(const Partition& lambda, TableauFilter filter,
                                                bool with_exact) {
  if (lambda.n() < 2) throw std::invalid_argument("corner_pair_groups: need n >= 2");
  const bool exact = with_exact && log_dimension(lambda) < 511.0 * std::log(2.0);
  std::vector<CornerPairGroup> groups;
  for (const Box& beta : removable_corners(lambda)) {
    const Partition reduced = remove_box(lambda, beta);
    for (const Box& gamma : removable_corners(reduced)) {
      const Partition mu = remove_box(reduced, gamma);
      CornerPairGroup g;
      g.box_n = beta;
      g.box_n1 = gamma;
      g.content_n = beta.content();
      g.content_n1 = gamma.content();
      if (beta.row == gamma.row) {
        g.relation = CornerRelation::SameRow;
      } else if (beta.col == gamma.col) {
        g.relation = CornerRelation::SameColumn;
      } else {
        g.relation = CornerRelation::Neither;
      }
      if (filter == TableauFilter::All) {
        g.log_count = log_dimension(mu);
        if (exact) g.exact_count = dimension(mu);
      } else {
        std::tie(g.log_count, g.exact_count) = upper_group_count(mu, beta, gamma, exact);
      }
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

bool StandardTableau::is_upper() const {
  return entry_positions.size() >= 2 && entry_positions[1] == Box{1, 2};
}

std::vector<int> StandardTableau::contents() const {
  std::vector<int> out;
  out.reserve(entry_positions.size());
  for (const Box& b : entry_positions) out.push_back(b.content());
  return out;
}

std::vector<StandardTableau> enumerate_standard_tableaux(const Partition& lambda,
                                                         std::uint64_t max_count) {
  if (dimension(lambda) > max_count) {
    throw std::length_error("enumerate_standard_tableaux: d_lambda exceeds " + std::to_string(max_count));
  }
  std::vector<StandardTableau> out;
  std::vector<int> filled(static_cast<std::size_t>(lambda.length()), 0);
  std::vector<Box> positions;
  positions.reserve(static_cast<std::size_t>(lambda.n()));
  auto place = [&](auto&& self) -> void {
    if (static_cast<int>(positions.size()) == lambda.n()) {
      out.push_back(StandardTableau{lambda, positions});
      return;
    }
    for (int r = 0; r < lambda.length(); ++r) {
      const int col = filled[static_cast<std::size_t>(r)];
      const bool fits = col < lambda.row(r) && (r == 0 || filled[static_cast<std::size_t>(r - 1)] > col);
      if (!fits) continue;
      ++filled[static_cast<std::size_t>(r)];
      positions.push_back(Box{r + 1, col + 1});
      self(self);
      positions.pop_back();
      --filled[static_cast<std::size_t>(r)];
    }
  };
  place(place);
  return out;
}

}  // namespace walkspectra
