#include "szilard/log_domain.hpp"

#include <algorithm>

namespace szilard {

LogZ::LogZ(double value) : value_(value) {
  if (std::isnan(value)) throw GuardError("log partition function evaluated to NaN");
  if (value == kPosInf) throw GuardError("log partition function overflowed to +inf");
}

LogZ LogZ::pow(int exponent) const {
  if (exponent == 0) return one();
  return LogZ(value_ * exponent);
}

LogZ log_add(LogZ a, LogZ b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double hi = std::max(a.value(), b.value());
  const double lo = std::min(a.value(), b.value());
  return LogZ(hi + std::log1p(std::exp(lo - hi)));
}

LogZ log_sum(std::span<const double> terms) {
  LogSumAccumulator acc;
  for (double t : terms) acc.add(t);
  return acc.result();
}

void LogSumAccumulator::add(double log_term) {
  if (log_term == kNegInf) return;
  if (log_term <= max_) {
    scaled_sum_ += std::exp(log_term - max_);
  } else {
    scaled_sum_ = scaled_sum_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  }
}

LogZ LogSumAccumulator::result() const {
  if (max_ == kNegInf) return LogZ::zero();
  return LogZ(max_ + std::log(scaled_sum_));
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("binomial index out of range");
  if (n <= 50) return std::log(static_cast<double>(binomial(n, k)));
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

long binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("binomial index out of range");
  long c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace szilard
