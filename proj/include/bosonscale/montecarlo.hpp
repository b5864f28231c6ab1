#ifndef BOSONSCALE_MONTECARLO_HPP
#define BOSONSCALE_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bosonscale/errors.hpp"
#include "bosonscale/haar.hpp"
#include "bosonscale/matrix.hpp"
#include "bosonscale/permanent.hpp"

namespace bosonscale {

inline constexpr std::size_t kMaxEnsemblePhotons = 25;
inline constexpr std::size_t kMaxEnsemblePolynomialModes = 8;
inline constexpr std::size_t kMinEnsembleSamples = 4;

/// Settings for a brute-force ensemble average of |perm(T_sub)|^2.
struct EnsembleConfig {
  std::size_t n = 1;        // sub-matrix size (photons)
  std::size_t m = 1;        // modes
  double t = 1.0;           // intensity transmission
  std::size_t samples = 4;  // S
  RngSeed seed{};
  std::size_t workers = 1;  // scheduling hint; never changes the result
  // Rows/columns to keep; defaults to the leading n x n block.
  std::optional<SubmatrixSpec> block;
};

/// Sample mean with a sub-ensemble (batch-means) standard error.
struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;        // S as requested
  std::size_t sub_ensembles = 0;  // floor(sqrt(S))
  std::size_t discarded = 0;      // remainder left out of the equal-size blocks
  double ln_mean = -std::numeric_limits<double>::infinity();
};

/// Complex-valued mean with per-component errors, same block scheme.
struct ComplexEnsembleEstimate {
  std::complex<double> mean{};
  double std_error_real = 0.0;
  double std_error_imag = 0.0;
  std::size_t samples = 0;
  std::size_t sub_ensembles = 0;
  std::size_t discarded = 0;
};

namespace detail {

// Pairwise (cascade) summation.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline std::size_t resolve_workers(std::size_t hint) {
  if (hint == 0) hint = std::max(1u, std::thread::hardware_concurrency());
  return hint;
}

// values[i] = fn(i) for i in [0, count). Each worker owns a contiguous
// index range; results land at their index, so the output does not depend
// on the worker count.
template <class T, class Fn>
std::vector<T> evaluate_indexed(std::size_t count, std::size_t workers, Fn fn) {
  std::vector<T> values(count);
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) values[i] = fn(i);
    return values;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) values[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return values;
}

struct BlockStats {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t blocks = 0;
  std::size_t discarded = 0;
};

// floor(sqrt(S)) contiguous blocks of floor(S / blocks) samples each; the
// remainder is dropped. Standard error is the block-mean standard deviation
// over sqrt(blocks).
inline BlockStats block_statistics(std::span<const double> values) {
  const std::size_t s = values.size();
  auto blocks = static_cast<std::size_t>(std::sqrt(static_cast<double>(s)));
  while (blocks * blocks > s) --blocks;
  while ((blocks + 1) * (blocks + 1) <= s) ++blocks;
  const std::size_t per_block = s / blocks;

  std::vector<double> means(blocks);
  for (std::size_t b = 0; b < blocks; ++b)
    means[b] = pairwise_sum(values.subspan(b * per_block, per_block)) / static_cast<double>(per_block);

  BlockStats out;
  out.blocks = blocks;
  out.discarded = s - blocks * per_block;
  out.mean = pairwise_sum(means) / static_cast<double>(blocks);
  if (blocks > 1) {
    std::vector<double> dev2(blocks);
    for (std::size_t b = 0; b < blocks; ++b) dev2[b] = (means[b] - out.mean) * (means[b] - out.mean);
    const double var = pairwise_sum(dev2) / static_cast<double>(blocks - 1);
    out.std_error = std::sqrt(var / static_cast<double>(blocks));
  }
  return out;
}

inline void require_samples(std::size_t s, const char* who) {
  if (s < kMinEnsembleSamples) {
    throw std::invalid_argument(std::string(who) + ": need at least 4 samples, got " +
                                std::to_string(s));
  }
}

}  // namespace detail

/// Monte-Carlo estimate of <|perm(T_sub)|^2>_U over CUE(m), T = sqrt(t) U.
/// Sample i uses RNG stream i of the configured seed.
inline EnsembleEstimate estimate_coincidence(const EnsembleConfig& config) {
  if (config.n < 1 || config.n > config.m) {
    throw std::invalid_argument("estimate_coincidence: need 1 <= n <= m");
  }
  if (!(config.t > 0.0 && config.t <= 1.0)) {
    throw std::invalid_argument("estimate_coincidence: transmission must lie in (0, 1]");
  }
  detail::require_size(config.n, kMaxEnsemblePhotons, "estimate_coincidence");
  detail::require_samples(config.samples, "estimate_coincidence");
  const SubmatrixSpec block = config.block.value_or(SubmatrixSpec::leading(config.n));
  if (block.size() != config.n) {
    throw std::invalid_argument("estimate_coincidence: block size must equal n");
  }
  if (block.row_indices().back() >= config.m || block.col_indices().back() >= config.m) {
    throw std::invalid_argument("estimate_coincidence: block index out of range");
  }

  const double amplitude = std::sqrt(config.t);
  const auto values = detail::evaluate_indexed<double>(
      config.samples, config.workers, [&](std::size_t i) {
        const ComplexMatrix u = sample_cue(config.m, config.seed.with_stream(i));
        const ComplexMatrix sub = submatrix(u, block).scaled(amplitude);
        return std::norm(permanent_ryser(sub));
      });

  const auto stats = detail::block_statistics(values);
  EnsembleEstimate out;
  out.mean = stats.mean;
  out.std_error = stats.std_error;
  out.samples = config.samples;
  out.sub_ensembles = stats.blocks;
  out.discarded = stats.discarded;
  out.ln_mean = stats.mean > 0.0 ? std::log(stats.mean) : -std::numeric_limits<double>::infinity();
  return out;
}

/// Monte-Carlo estimate of <p(x) p(y)*>_U, p(x) = perm(xI - sqrt(t) U).
inline ComplexEnsembleEstimate estimate_permanental_product(std::complex<double> x,
                                                            std::complex<double> y, std::size_t m,
                                                            double t, std::size_t samples,
                                                            RngSeed seed, std::size_t workers = 1) {
  if (m < 1) throw std::invalid_argument("estimate_permanental_product: m must be >= 1");
  detail::require_size(m, kMaxEnsemblePolynomialModes, "estimate_permanental_product");
  detail::require_samples(samples, "estimate_permanental_product");
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::invalid_argument("estimate_permanental_product: transmission must lie in (0, 1]");
  }

  const double amplitude = std::sqrt(t);
  const auto products = detail::evaluate_indexed<std::complex<double>>(
      samples, workers, [&](std::size_t i) {
        const ComplexMatrix tm = sample_cue(m, seed.with_stream(i)).scaled(amplitude);
        const auto b = permanental_polynomial_coeffs(tm);
        return evaluate_permanental_polynomial(b, x) * std::conj(evaluate_permanental_polynomial(b, y));
      });

  std::vector<double> re(samples), im(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    re[i] = products[i].real();
    im[i] = products[i].imag();
  }
  const auto sr = detail::block_statistics(re);
  const auto si = detail::block_statistics(im);
  ComplexEnsembleEstimate out;
  out.mean = {sr.mean, si.mean};
  out.std_error_real = sr.std_error;
  out.std_error_imag = si.std_error;
  out.samples = samples;
  out.sub_ensembles = sr.blocks;
  out.discarded = sr.discarded;
  return out;
}

/// (mean / exact - 1, sigma / exact) with exact = exp(exact_ln).
struct RelativeError {
  double rel_err = 0.0;
  double rel_sigma = 0.0;
};

inline RelativeError relative_error(const EnsembleEstimate& estimate, double exact_ln) {
  if (!(estimate.mean > 0.0)) {
    throw std::domain_error("relative_error: estimate mean must be positive");
  }
  const double ln_mean = std::log(estimate.mean);
  RelativeError out;
  out.rel_err = std::expm1(ln_mean - exact_ln);
  out.rel_sigma = estimate.std_error > 0.0 ? std::exp(std::log(estimate.std_error) - exact_ln) : 0.0;
  return out;
}

}  // namespace bosonscale

#endif  // BOSONSCALE_MONTECARLO_HPP
