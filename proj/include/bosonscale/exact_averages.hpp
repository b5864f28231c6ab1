#ifndef BOSONSCALE_EXACT_AVERAGES_HPP
#define BOSONSCALE_EXACT_AVERAGES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosonscale/errors.hpp"
#include "bosonscale/log_domain.hpp"
#include "bosonscale/moments.hpp"

namespace bosonscale {

namespace detail {

inline void require_photons_modes(std::size_t n, std::size_t m, const char* who) {
  if (n < 1 || n > m) {
    throw std::invalid_argument(std::string(who) + ": need 1 <= n <= m, got n = " +
                                std::to_string(n) + ", m = " + std::to_string(m));
  }
}

inline void require_transmission(double t, const char* who) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": transmission must lie in (0, 1]");
  }
}

// One term of a real series stored as sign * exp(ln_mag).
struct SignedLogTerm {
  log_real ln_mag;
  int sign;
};

// Sum of signed terms after scaling by the largest magnitude.
inline double sum_scaled(std::span<const SignedLogTerm> terms) {
  log_real top = -std::numeric_limits<log_real>::infinity();
  for (const auto& t : terms)
    if (t.sign != 0) top = std::max(top, t.ln_mag);
  if (top == -std::numeric_limits<log_real>::infinity()) return 0.0;
  log_real acc = 0.0L;
  for (const auto& t : terms)
    if (t.sign != 0) acc += t.sign * std::exp(t.ln_mag - top);
  return static_cast<double>(acc * std::exp(top));
}

}  // namespace detail

/// Unitary-averaged probability of one photon in each of n preselected
/// output channels, for n single photons into an m-mode network with
/// transmission t:  P = t^n (m-1)! n! / (m-1+n)! = t^n / C(m+n-1, n).
inline LogNonNegative coincidence_probability(std::size_t n, std::size_t m, double t) {
  detail::require_photons_modes(n, m, "coincidence_probability");
  detail::require_transmission(t, "coincidence_probability");
  const log_real lossless = log_factorial(m - 1) + log_factorial(n) - log_factorial(m - 1 + n);
  return LogNonNegative::from_log(lossless + static_cast<log_real>(n) * std::log(static_cast<log_real>(t)));
}

/// Sum of the averaged coincidence rate over all C(m, n) output channel
/// subsets:  R = t^n m! (m-1)! / ((m-n)! (m+n-1)!).
inline LogNonNegative grouped_bound(std::size_t n, std::size_t m, double t) {
  detail::require_photons_modes(n, m, "grouped_bound");
  detail::require_transmission(t, "grouped_bound");
  const log_real lossless = log_factorial(m) + log_factorial(m - 1) - log_factorial(m - n) -
                            log_factorial(m + n - 1);
  return LogNonNegative::from_log(lossless + static_cast<log_real>(n) * std::log(static_cast<log_real>(t)));
}

/// <p(x) p(y)*>_U for p(x) = perm(xI - sqrt(t) U), U in CUE(m):
///
///   m! (m-1)! sum_{j=0}^{m} t^j (x y*)^{m-j} / ((m-j)! (m-1+j)!)
///
/// Each term is formed from its log magnitude and phase, then summed after
/// scaling by the largest term.
inline std::complex<double> averaged_permanental_product(std::complex<double> x,
                                                         std::complex<double> y, std::size_t m,
                                                         double t) {
  if (m < 1) throw std::invalid_argument("averaged_permanental_product: m must be >= 1");
  detail::require_transmission(t, "averaged_permanental_product");

  const std::complex<long double> z{x * std::conj(y)};
  const log_real ln_z = std::abs(z) > 0.0L ? std::log(std::abs(z))
                                           : -std::numeric_limits<log_real>::infinity();
  const log_real arg_z = std::arg(z);
  const log_real ln_t = std::log(static_cast<log_real>(t));
  const log_real prefactor = log_factorial(m) + log_factorial(m - 1);

  std::vector<log_real> ln_mag(m + 1);
  log_real top = -std::numeric_limits<log_real>::infinity();
  for (std::size_t j = 0; j <= m; ++j) {
    const std::size_t power = m - j;
    if (power > 0 && ln_z == -std::numeric_limits<log_real>::infinity()) {
      ln_mag[j] = ln_z;
      continue;
    }
    ln_mag[j] = prefactor + static_cast<log_real>(j) * ln_t +
                (power > 0 ? static_cast<log_real>(power) * ln_z : 0.0L) -
                log_factorial(power) - log_factorial(m - 1 + j);
    top = std::max(top, ln_mag[j]);
  }

  std::complex<long double> acc = 0.0L;
  for (std::size_t j = 0; j <= m; ++j) {
    if (ln_mag[j] == -std::numeric_limits<log_real>::infinity()) continue;
    acc += std::polar(std::exp(ln_mag[j] - top), static_cast<log_real>(m - j) * arg_z);
  }
  acc *= std::exp(top);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

/// A truncated series value. When `exact` is false, `truncation_bound` is
/// the magnitude of the last included term.
struct SeriesValue {
  double value = 0.0;
  double truncation_bound = 0.0;
  bool exact = true;
  std::size_t terms = 0;
};

namespace detail {

// Number of terms to sum and whether the sum is exact.
inline std::pair<std::size_t, bool> series_extent(const MomentSequence& moments, std::size_t j_max,
                                                  const char* who) {
  if (moments.exact_cutoff()) return {moments.known(), true};
  if (j_max + 1 > moments.known()) {
    throw std::invalid_argument(std::string(who) + ": j_max = " + std::to_string(j_max) +
                                " needs more moments than the " + std::to_string(moments.known()) +
                                " supplied");
  }
  return {j_max + 1, false};
}

inline SeriesValue finish_series(std::span<const SignedLogTerm> terms, bool exact,
                                 const char* who) {
  SeriesValue out;
  out.terms = terms.size();
  out.exact = exact;
  out.value = sum_scaled(terms);
  if (!exact) {
    const auto& last = terms.back();
    const double last_mag = last.sign == 0 ? 0.0 : static_cast<double>(std::exp(last.ln_mag));
    out.truncation_bound = last_mag;
    if (terms.size() >= 2) {
      const auto& prev = terms[terms.size() - 2];
      const bool growing = last.sign != 0 && (prev.sign == 0 || last.ln_mag > prev.ln_mag);
      if (growing) {
        throw series_divergence_error(std::string(who) +
                                          ": terms still growing at the truncation point",
                                      last_mag);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Unitary- and state-averaged output characteristic function
///
///   (m-1)! sum_j (-t |xi|^2)^j <:N^j:> / (j! (m-1+j)!)
///
/// Exact when the moments terminate; otherwise summed through j_max.
/// Throws series_divergence_error if the terms are still growing at j_max.
inline SeriesValue averaged_characteristic(double xi_norm_sq, std::size_t m, double t,
                                           const MomentSequence& moments, std::size_t j_max) {
  if (!(xi_norm_sq >= 0.0)) throw std::invalid_argument("averaged_characteristic: |xi|^2 < 0");
  if (m < 1) throw std::invalid_argument("averaged_characteristic: m must be >= 1");
  detail::require_transmission(t, "averaged_characteristic");
  if (xi_norm_sq == 0.0) return {1.0, 0.0, true, 1};

  const auto [count, exact] = detail::series_extent(moments, j_max, "averaged_characteristic");
  const log_real ln_x = std::log(static_cast<log_real>(t) * xi_norm_sq);
  const log_real prefactor = log_factorial(m - 1);
  std::vector<detail::SignedLogTerm> terms(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double mj = moments[j];
    if (mj == 0.0) {
      terms[j] = {0.0L, 0};
      continue;
    }
    terms[j].ln_mag = prefactor + static_cast<log_real>(j) * ln_x +
                      std::log(static_cast<log_real>(mj)) - log_factorial(j) -
                      log_factorial(m - 1 + j);
    terms[j].sign = j % 2 == 0 ? 1 : -1;
  }
  return detail::finish_series(terms, exact, "averaged_characteristic");
}

/// Complete homogeneous symmetric polynomials h_0..h_degree of `vars`, by
/// Newton's identity  j h_j = sum_{i=1}^{j} p_i h_{j-i}  on the power sums p_i.
inline std::vector<double> complete_homogeneous(std::span<const double> vars, std::size_t degree) {
  std::vector<double> power_sums(degree + 1, 0.0);
  std::vector<double> powers(vars.begin(), vars.end());
  for (std::size_t i = 1; i <= degree; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
      s += powers[k];
      powers[k] *= vars[k];
    }
    power_sums[i] = s;
  }
  std::vector<double> h(degree + 1, 0.0);
  h[0] = 1.0;
  for (std::size_t j = 1; j <= degree; ++j) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= j; ++i) acc += power_sums[i] * h[j - i];
    h[j] = acc / static_cast<double>(j);
  }
  return h;
}

/// Unitary-averaged photon-number generating function
/// G(gamma) = < prod_i (1 - gamma_i)^{n_i} >:
///
///   (m-1)! sum_j (-t)^j <:N^j:> / (m-1+j)!  h_j(gamma_1, ..., gamma_m)
///
/// where m = gamma.size() and h_j is the complete homogeneous symmetric
/// polynomial of degree j.
inline SeriesValue generating_function(std::span<const double> gamma, double t,
                                       const MomentSequence& moments, std::size_t j_max) {
  const std::size_t m = gamma.size();
  if (m < 1) throw std::invalid_argument("generating_function: need at least one mode");
  for (double g : gamma)
    if (!std::isfinite(g)) throw std::invalid_argument("generating_function: non-finite gamma");
  detail::require_transmission(t, "generating_function");

  const auto [count, exact] = detail::series_extent(moments, j_max, "generating_function");
  const std::vector<double> h = complete_homogeneous(gamma, count - 1);
  const log_real ln_t = std::log(static_cast<log_real>(t));
  const log_real prefactor = log_factorial(m - 1);
  std::vector<detail::SignedLogTerm> terms(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double mj = moments[j];
    if (mj == 0.0 || h[j] == 0.0) {
      terms[j] = {0.0L, 0};
      continue;
    }
    terms[j].ln_mag = prefactor + static_cast<log_real>(j) * ln_t +
                      std::log(static_cast<log_real>(mj)) +
                      std::log(std::abs(static_cast<log_real>(h[j]))) - log_factorial(m - 1 + j);
    const int h_sign = h[j] > 0.0 ? 1 : -1;
    terms[j].sign = (j % 2 == 0 ? 1 : -1) * h_sign;
  }
  return detail::finish_series(terms, exact, "generating_function");
}

}  // namespace bosonscale

#endif  // BOSONSCALE_EXACT_AVERAGES_HPP
