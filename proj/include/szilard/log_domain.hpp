#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace szilard {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Raised when a computation leaves its numerically valid domain
/// (occupied zero-length subwell, fermion truncation too short, oracle
/// enumeration too large, barrier moved off the box).
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Natural logarithm of a non-negative partition function.
/// -inf encodes Z = 0; NaN is never stored.
class LogZ {
 public:
  constexpr LogZ() = default;
  explicit LogZ(double value);

  static constexpr LogZ one() { return LogZ(0.0, Unchecked{}); }
  static constexpr LogZ zero() { return LogZ(kNegInf, Unchecked{}); }

  constexpr double value() const { return value_; }
  constexpr bool is_zero() const { return value_ == kNegInf; }

  /// Product of the underlying partition functions.
  friend LogZ operator*(LogZ a, LogZ b) { return LogZ(a.value_ + b.value_); }
  /// Z raised to an integer power.
  LogZ pow(int exponent) const;

  friend bool operator==(LogZ a, LogZ b) = default;

 private:
  struct Unchecked {};
  constexpr LogZ(double value, Unchecked) : value_(value) {}
  double value_ = kNegInf;
};

/// log(e^a + e^b).
LogZ log_add(LogZ a, LogZ b);

/// log(sum_i e^{terms[i]}); -inf entries are skipped.
LogZ log_sum(std::span<const double> terms);

/// Streaming log-sum-exp over an unbounded number of terms.
class LogSumAccumulator {
 public:
  void add(double log_term);
  LogZ result() const;

 private:
  double max_ = kNegInf;
  double scaled_sum_ = 0.0;
};

/// log C(n, k) for 0 <= k <= n.
double log_binomial(int n, int k);

/// C(n, k) as an integer; n is small in this library.
long binomial(int n, int k);

}  // namespace szilard
