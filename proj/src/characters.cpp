#include "walkspectra/characters.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace walkspectra {

namespace {

// Beta-set of a partition with exactly `len` beta-numbers.
std::vector<int> beta_numbers(const std::vector<int>& parts, int len) {
  std::vector<int> beta(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    const int part = i < static_cast<int>(parts.size()) ? parts[static_cast<std::size_t>(i)] : 0;
    beta[static_cast<std::size_t>(i)] = part + (len - 1 - i);
  }
  return beta;  // strictly decreasing
}

std::vector<int> parts_from_beta(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  const int len = static_cast<int>(beta.size());
  std::vector<int> parts;
  for (int i = 0; i < len; ++i) {
    const int part = beta[static_cast<std::size_t>(i)] - (len - 1 - i);
    if (part > 0) parts.push_back(part);
  }
  return parts;
}

class MnEvaluator {
 public:
  explicit MnEvaluator(std::vector<int> cycles) : cycles_(std::move(cycles)) {}

  BigInt evaluate(const std::vector<int>& shape, std::size_t next) {
    if (next == cycles_.size()) return 1;  // only the empty shape reaches here
    // Remaining cycles all of length one: the answer is the dimension.
    if (cycles_[next] == 1) return dimension(Partition(shape));
    const auto key = std::make_pair(shape, next);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int r = cycles_[next];
    const int len = static_cast<int>(shape.size());
    std::vector<int> beta = beta_numbers(shape, len);
    const std::set<int> present(beta.begin(), beta.end());
    BigInt total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      const int target = beta[i] - r;
      if (target < 0 || present.count(target) != 0) continue;
      // Height of the removed rim hook = beta-numbers strictly in between.
      int height = 0;
      for (int b : beta) {
        if (b > target && b < beta[i]) ++height;
      }
      std::vector<int> moved = beta;
      moved[i] = target;
      const BigInt sub = evaluate(parts_from_beta(std::move(moved)), next + 1);
      if (height % 2 == 0) {
        total += sub;
      } else {
        total -= sub;
      }
    }
    memo_.emplace(key, total);
    return total;
  }

 private:
  std::vector<int> cycles_;
  std::map<std::pair<std::vector<int>, std::size_t>, BigInt> memo_;
};

}  // namespace

BigInt mn_character(const Partition& lambda, const CycleType& mu) {
  if (lambda.n() != mu.n()) throw std::invalid_argument("mn_character: sizes differ");
  MnEvaluator evaluator(mu.parts());  // parts are already longest first
  return evaluator.evaluate(lambda.parts(), 0);
}

Rational normalized_three_cycle(const Partition& lambda) {
  const int n = lambda.n();
  if (n < 3) throw std::invalid_argument("normalized_three_cycle: need n >= 3");
  std::vector<int> cycle_parts{3};
  cycle_parts.insert(cycle_parts.end(), static_cast<std::size_t>(n - 3), 1);
  BigInt chi = mn_character(lambda, CycleType(std::move(cycle_parts)));
  BigInt d = dimension(lambda);
  const BigInt g = boost::multiprecision::gcd(chi < 0 ? BigInt(-chi) : chi, d);
  if (g > 1) {
    chi /= g;
    d /= g;
  }
  // After reduction the denominator divides n(n-1)(n-2), so both fit.
  return Rational(chi.convert_to<std::int64_t>(), d.convert_to<std::int64_t>());
}

double normalized_three_cycle_fast(const std::vector<int>& parts) {
  double n = 0.0;
  double squares = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j = 0; j < parts[i]; ++j) {
      const double c = static_cast<double>(j - static_cast<int>(i));
      squares += c * c;
    }
    n += parts[i];
  }
  return 3.0 * (squares - n * (n - 1.0) / 2.0) / (n * (n - 1.0) * (n - 2.0));
}

BigInt class_size(const CycleType& mu) {
  BigInt size = 1;
  for (int k = 2; k <= mu.n(); ++k) size *= k;
  // Divide by prod_k k^{m_k} m_k!.
  std::map<int, int> multiplicity;
  for (int part : mu.parts()) ++multiplicity[part];
  BigInt centralizer = 1;
  for (const auto& [part, count] : multiplicity) {
    for (int i = 1; i <= count; ++i) centralizer *= BigInt(part) * i;
  }
  return size / centralizer;
}

}  // namespace walkspectra
