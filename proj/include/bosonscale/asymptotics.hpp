#ifndef BOSONSCALE_ASYMPTOTICS_HPP
#define BOSONSCALE_ASYMPTOTICS_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bosonscale {

/// Large-n scaling regimes of ln P (or ln R for GroupedBound), all with
/// k = m / n.
enum class ScalingRegime {
  EntireMatrix,      // n = m
  GaussianLimit,     // k >> 1
  GeneralSubmatrix,  // any k >= 1
  GroupedBound,      // sum over all C(m, n) channel subsets
};

inline std::string_view to_string(ScalingRegime r) {
  switch (r) {
    case ScalingRegime::EntireMatrix: return "entire";
    case ScalingRegime::GaussianLimit: return "gaussian";
    case ScalingRegime::GeneralSubmatrix: return "general";
    case ScalingRegime::GroupedBound: return "grouped";
  }
  return "unknown";
}

inline std::optional<ScalingRegime> parse_regime(std::string_view name) {
  if (name == "entire") return ScalingRegime::EntireMatrix;
  if (name == "gaussian") return ScalingRegime::GaussianLimit;
  if (name == "general") return ScalingRegime::GeneralSubmatrix;
  if (name == "grouped") return ScalingRegime::GroupedBound;
  return std::nullopt;
}

namespace detail {

// x ln x with the 0 ln 0 = 0 limit.
inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace detail

/// Per-photon exponent in natural log. For EntireMatrix k is ignored.
inline double scaling_exponent(ScalingRegime regime, double k, double t) {
  if (!(k >= 1.0)) throw std::invalid_argument("scaling_exponent: k must be >= 1");
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("scaling_exponent: t must lie in (0, 1]");
  const double ln_t = std::log(t);
  switch (regime) {
    case ScalingRegime::EntireMatrix:
      return std::log(t / 4.0);
    case ScalingRegime::GaussianLimit:
      return std::log(t / (k + 0.5)) - 1.0;
    case ScalingRegime::GeneralSubmatrix:
      // k = 1 is the entire matrix; return that form so the two agree bitwise.
      if (k == 1.0) return std::log(t / 4.0);
      return ln_t + detail::xlogx(k) - detail::xlogx(1.0 + k);
    case ScalingRegime::GroupedBound:
      return ln_t + 2.0 * detail::xlogx(k) - detail::xlogx(k - 1.0) - detail::xlogx(k + 1.0);
  }
  throw std::invalid_argument("scaling_exponent: unknown regime");
}

/// Asymptotic ln P_{n|m} (ln R_{n|m} for GroupedBound): n * exponent plus
/// the half-log correction of the regime.
inline double asymptotic_log_probability(ScalingRegime regime, std::size_t n, std::size_t m,
                                         double t) {
  if (n < 1 || m < n) {
    throw std::invalid_argument("asymptotic_log_probability: need 1 <= n <= m");
  }
  if (regime == ScalingRegime::EntireMatrix && m != n) {
    throw std::invalid_argument("asymptotic_log_probability: entire-matrix regime needs m = n");
  }
  if (regime == ScalingRegime::GroupedBound && m == n) {
    throw std::domain_error(
        "asymptotic_log_probability: grouped-bound correction ln((k+1)/(k-1)) diverges at k = 1");
  }
  const double nd = static_cast<double>(n);
  const double k = static_cast<double>(m) / nd;
  const double lead = nd * scaling_exponent(regime, k, t);
  constexpr double pi = std::numbers::pi;
  switch (regime) {
    case ScalingRegime::EntireMatrix:
      return lead + 0.5 * std::log(4.0 * pi * nd);
    case ScalingRegime::GaussianLimit:
      return lead + 0.5 * std::log(2.0 * pi * nd);
    case ScalingRegime::GeneralSubmatrix:
      return lead + 0.5 * std::log(2.0 * pi * nd * (1.0 + 1.0 / k));
    case ScalingRegime::GroupedBound:
      return lead + 0.5 * std::log((k + 1.0) / (k - 1.0));
  }
  throw std::invalid_argument("asymptotic_log_probability: unknown regime");
}

}  // namespace bosonscale

#endif  // BOSONSCALE_ASYMPTOTICS_HPP
