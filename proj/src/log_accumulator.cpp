#include "walkspectra/log_accumulator.hpp"

namespace walkspectra {

SignedLog SignedLog::from_double(double x) {
  if (x == 0.0) return {};
  return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
}

SignedLog SignedLog::from_log(int sign, double log_magnitude) {
  if (sign == 0 || log_magnitude == -std::numeric_limits<double>::infinity()) return {};
  return {sign > 0 ? 1 : -1, log_magnitude};
}

SignedLog operator*(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

SignedLog operator+(const SignedLog& a, const SignedLog& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const SignedLog& big = a.log_magnitude >= b.log_magnitude ? a : b;
  const SignedLog& small = a.log_magnitude >= b.log_magnitude ? b : a;
  const double ratio = std::exp(small.log_magnitude - big.log_magnitude);
  if (big.sign == small.sign) return {big.sign, big.log_magnitude + std::log1p(ratio)};
  if (ratio == 1.0) return {};
  return {big.sign, big.log_magnitude + std::log1p(-ratio)};
}

SignedLog SignedLog::pow(std::int64_t k) const {
  if (k == 0) return {1, 0.0};
  if (sign == 0) return {};
  const int s = (sign < 0 && (k % 2 != 0)) ? -1 : 1;
  return {s, static_cast<double>(k) * log_magnitude};
}

void SignedLogAccumulator::add(const SignedLog& term) {
  if (term.sign == 0) return;
  if (term.log_magnitude > max_log_) {
    scaled_sum_ = scaled_sum_ * std::exp(max_log_ - term.log_magnitude);
    max_log_ = term.log_magnitude;
  }
  scaled_sum_ += term.sign * std::exp(term.log_magnitude - max_log_);
}

void SignedLogAccumulator::add(const SignedLogAccumulator& other) { add(other.value()); }

SignedLog SignedLogAccumulator::value() const {
  if (scaled_sum_ == 0.0) return {};
  return {scaled_sum_ > 0 ? 1 : -1, max_log_ + std::log(std::fabs(scaled_sum_))};
}

}  // namespace walkspectra
