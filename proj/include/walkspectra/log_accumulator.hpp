#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace walkspectra {

// A real number stored as sign * exp(log_magnitude). Zero is sign 0 with
// log_magnitude = -inf.
struct SignedLog {
  int sign = 0;
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static SignedLog zero() { return {}; }
  static SignedLog from_double(double x);
  static SignedLog from_log(int sign, double log_magnitude);

  bool is_zero() const { return sign == 0; }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

  SignedLog operator-() const { return {-sign, log_magnitude}; }
  friend SignedLog operator*(const SignedLog& a, const SignedLog& b);
  friend SignedLog operator+(const SignedLog& a, const SignedLog& b);
  friend SignedLog operator-(const SignedLog& a, const SignedLog& b) { return a + (-b); }

  // Integer power; pow(x, 0) == 1 including x == 0.
  SignedLog pow(std::int64_t k) const;
  SignedLog square() const { return pow(2); }
};

// Streaming sum of SignedLog terms. Keeps a running maximum log magnitude
// and a scaled partial sum, so no term is exponentiated at its own scale.
class SignedLogAccumulator {
 public:
  void add(const SignedLog& term);
  void add(const SignedLogAccumulator& other);
  SignedLog value() const;
  double to_double() const { return value().to_double(); }

 private:
  double max_log_ = -std::numeric_limits<double>::infinity();
  double scaled_sum_ = 0.0;
};

}  // namespace walkspectra
