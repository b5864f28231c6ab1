#ifndef BOSONSCALE_LOG_DOMAIN_HPP
#define BOSONSCALE_LOG_DOMAIN_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bosonscale {

/// Working precision for log-domain quantities. Natural logs of probabilities
/// reach magnitudes ~1e4 at m ~ 1e4, where a double ulp is ~2e-12; the
/// extended type keeps sums of log-factorials accurate to ~1e-15 there.
using log_real = long double;

/// A non-negative real v carried as ln(v). Exact zero is ln = -inf.
class LogNonNegative {
 public:
  constexpr LogNonNegative() = default;

  static LogNonNegative zero() { return LogNonNegative{}; }

  static LogNonNegative from_log(log_real ln_value) {
    if (std::isnan(ln_value) || ln_value == std::numeric_limits<log_real>::infinity()) {
      throw std::invalid_argument("LogNonNegative: log value must be finite or -inf");
    }
    LogNonNegative out;
    out.ln_ = ln_value;
    return out;
  }

  static LogNonNegative from_value(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("LogNonNegative: value must be finite and non-negative");
    }
    return v == 0.0 ? zero() : from_log(std::log(static_cast<log_real>(v)));
  }

  bool is_zero() const noexcept { return ln_ == -std::numeric_limits<log_real>::infinity(); }
  log_real ln() const noexcept { return ln_; }
  log_real log10() const noexcept { return ln_ / std::numbers::ln10_v<log_real>; }

  /// Plain value; underflows to 0 or overflows to +inf outside double range.
  double value() const noexcept { return static_cast<double>(std::exp(ln_)); }

  friend LogNonNegative operator*(LogNonNegative a, LogNonNegative b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.ln_ + b.ln_);
  }

  friend auto operator<=>(const LogNonNegative&, const LogNonNegative&) = default;

 private:
  log_real ln_ = -std::numeric_limits<log_real>::infinity();
};

namespace detail {

inline constexpr std::size_t kLogFactorialTable = 256;

inline const std::array<log_real, kLogFactorialTable + 1>& log_factorial_table() {
  static const auto table = [] {
    std::array<log_real, kLogFactorialTable + 1> t{};
    t[0] = 0.0L;
    for (std::size_t i = 1; i <= kLogFactorialTable; ++i)
      t[i] = t[i - 1] + std::log(static_cast<log_real>(i));
    return t;
  }();
  return table;
}

// ln Gamma(z) by the Stirling series; accurate to extended precision for z > 256.
inline log_real log_gamma_stirling(log_real z) {
  constexpr log_real half_ln_2pi = 0.918938533204672741780329736405617639861L;
  const log_real inv = 1.0L / z;
  const log_real inv2 = inv * inv;
  const log_real series =
      inv * (1.0L / 12 - inv2 * (1.0L / 360 - inv2 * (1.0L / 1260 - inv2 * (1.0L / 1680 -
                                                                             inv2 / 1188))));
  return (z - 0.5L) * std::log(z) - z + half_ln_2pi + series;
}

}  // namespace detail

/// ln(n!)
inline log_real log_factorial(std::uint64_t n) {
  if (n <= detail::kLogFactorialTable) return detail::log_factorial_table()[n];
  return detail::log_gamma_stirling(static_cast<log_real>(n) + 1.0L);
}

/// ln C(a, b). Exact integer product for a <= 60, log-factorials above.
inline log_real log_binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) {
    throw std::invalid_argument("log_binomial: b = " + std::to_string(b) + " exceeds a = " +
                                std::to_string(a));
  }
  if (a <= 60) {
    const std::uint64_t r = b < a - b ? b : a - b;
    unsigned __int128 c = 1;
    // c * (a - i) stays below 2^71 for a <= 60; the division is exact.
    for (std::uint64_t i = 0; i < r; ++i) c = c * (a - i) / (i + 1);
    return std::log(static_cast<log_real>(c));
  }
  return log_factorial(a) - log_factorial(b) - log_factorial(a - b);
}

}  // namespace bosonscale

#endif  // BOSONSCALE_LOG_DOMAIN_HPP
