#ifndef BOSONSCALE_PERMANENT_HPP
#define BOSONSCALE_PERMANENT_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosonscale/errors.hpp"
#include "bosonscale/matrix.hpp"

namespace bosonscale {

inline constexpr std::size_t kNaivePermanentMax = 10;
inline constexpr std::size_t kRyserPermanentMax = 30;
inline constexpr std::size_t kPermanentalPolynomialMax = 16;

namespace detail {

inline void require_square(const ComplexMatrix& m, const char* who) {
  if (!m.is_square()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

inline void require_size(std::size_t n, std::size_t limit, const char* who) {
  if (n > limit) {
    throw size_limit_error(std::string(who) + ": n = " + std::to_string(n) +
                           " exceeds the limit " + std::to_string(limit));
  }
}

// Kahan-Babuska compensated accumulator for complex sums with cancellation.
class CompensatedSum {
 public:
  void add(complex_t x) noexcept {
    re_.add(x.real());
    im_.add(x.imag());
  }
  complex_t value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  struct Real {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) noexcept {
      const double t = sum + x;
      if (std::abs(sum) >= std::abs(x)) {
        comp += (sum - t) + x;
      } else {
        comp += (x - t) + sum;
      }
      sum = t;
    }
    double value() const noexcept { return sum + comp; }
  };
  Real re_;
  Real im_;
};

}  // namespace detail

/// Permanent by enumerating all n! permutations. Reference oracle only.
inline complex_t permanent_naive(const ComplexMatrix& m) {
  detail::require_square(m, "permanent_naive");
  const std::size_t n = m.rows();
  detail::require_size(n, kNaivePermanentMax, "permanent_naive");

  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  complex_t total = 0.0;
  do {
    complex_t prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= m(i, sigma[i]);
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

/// Ryser's inclusion-exclusion formula
///
///   perm(A) = (-1)^n  sum_{S subset of cols} (-1)^{|S|} prod_i sum_{j in S} a_ij
///
/// visiting column subsets in binary-reflected Gray-code order so that each
/// step adds or removes a single column from the running row sums. Cost is
/// O(2^n n). The outer sum is compensated.
inline complex_t permanent_ryser(const ComplexMatrix& m) {
  detail::require_square(m, "permanent_ryser");
  const std::size_t n = m.rows();
  detail::require_size(n, kRyserPermanentMax, "permanent_ryser");

  std::vector<complex_t> row_sums(n, complex_t{0.0});
  std::vector<bool> in_set(n, false);
  detail::CompensatedSum total;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  bool odd = false;  // parity of |S|

  for (std::uint64_t k = 1; k < subsets; ++k) {
    const auto col = static_cast<std::size_t>(std::countr_zero(k));
    const double dir = in_set[col] ? -1.0 : 1.0;
    in_set[col] = !in_set[col];
    odd = !odd;
    for (std::size_t i = 0; i < n; ++i) row_sums[i] += dir * m(i, col);

    complex_t prod = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) prod *= row_sums[i];
    total.add(odd ? -prod : prod);
  }
  const complex_t result = total.value();
  return (n % 2 == 0) ? result : -result;
}

/// Coefficients b_0..b_m of p(x) = perm(xI - T) = sum_k b_k x^{m-k}, with
/// b_k = (-1)^k * (sum of permanents of all k x k principal sub-matrices).
inline std::vector<complex_t> permanental_polynomial_coeffs(const ComplexMatrix& t) {
  detail::require_square(t, "permanental_polynomial_coeffs");
  const std::size_t m = t.rows();
  detail::require_size(m, kPermanentalPolynomialMax, "permanental_polynomial_coeffs");

  std::vector<detail::CompensatedSum> sums(m + 1);
  std::vector<std::size_t> idx;
  idx.reserve(m);
  const std::uint32_t subsets = std::uint32_t{1} << m;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    idx.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint32_t{1} << i)) idx.push_back(i);
    const std::size_t k = idx.size();
    sums[k].add(permanent_ryser(submatrix(t, SubmatrixSpec::diagonal(idx))));
  }

  std::vector<complex_t> b(m + 1);
  b[0] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) b[k] = (k % 2 == 0 ? 1.0 : -1.0) * sums[k].value();
  return b;
}

/// Horner evaluation of sum_k b_k x^{m-k}.
inline complex_t evaluate_permanental_polynomial(std::span<const complex_t> coeffs, complex_t x) {
  complex_t acc = 0.0;
  for (const auto& b : coeffs) acc = acc * x + b;
  return acc;
}

}  // namespace bosonscale

#endif  // BOSONSCALE_PERMANENT_HPP
