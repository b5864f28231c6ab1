#ifndef BOSONSCALE_HAAR_HPP
#define BOSONSCALE_HAAR_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "bosonscale/matrix.hpp"

namespace bosonscale {

inline constexpr std::size_t kMaxUnitaryDimension = 4096;

/// A (seed, stream) pair. Stream i of a seed is independent of how many
/// other streams are drawn, so sample i of an ensemble is reproducible on
/// its own.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngSeed with_stream(std::uint64_t s) const noexcept { return {seed, s}; }
  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Engine for one stream. seed_seq mixes all 128 bits of (seed, stream).
inline std::mt19937_64 make_engine(RngSeed s) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(s.seed), hi(s.seed), lo(s.stream), hi(s.stream), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

}  // namespace detail

/// m x m Ginibre matrix of independent standard complex Gaussians,
/// E|z|^2 = 1.
template <class Engine>
Eigen::MatrixXcd ginibre(std::size_t m, Engine& engine) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::numbers::sqrt2);
  Eigen::MatrixXcd z(m, m);
  // Column-major fill: the order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < z.cols(); ++j)
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      z(i, j) = {re, im};
    }
  return z;
}

/// Haar-distributed unitary from CUE(m). QR-factorizes a Ginibre matrix and
/// right-multiplies Q by diag(r_ii / |r_ii|); without that phase fix Q is
/// not Haar distributed.
inline ComplexMatrix sample_cue(std::size_t m, RngSeed seed) {
  if (m == 0 || m > kMaxUnitaryDimension) {
    throw std::invalid_argument("sample_cue: dimension must be in [1, " +
                                std::to_string(kMaxUnitaryDimension) + "], got " +
                                std::to_string(m));
  }
  auto engine = make_engine(seed);
  const Eigen::MatrixXcd z = ginibre(m, engine);
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    // A zero pivot has probability zero; fall back to phase 1.
    const std::complex<double> phase = mag > 0.0 ? rjj / mag : std::complex<double>{1.0};
    q.col(j) *= phase;
  }
  return detail::from_eigen(q);
}

/// max_ij |(U^dagger U - I)_ij|
inline double unitarity_residual(const ComplexMatrix& u) {
  const Eigen::MatrixXcd e = detail::to_eigen(u);
  const Eigen::MatrixXcd g = e.adjoint() * e - Eigen::MatrixXcd::Identity(e.cols(), e.cols());
  return g.cwiseAbs().maxCoeff();
}

/// A unitary network with uniform intensity transmission t in (0, 1];
/// amplitude transmission is T = sqrt(t) U.
class LossyNetwork {
 public:
  static constexpr double kUnitarityTolerance = 1e-12;

  LossyNetwork(ComplexMatrix unitary, double transmission)
      : unitary_(std::move(unitary)), transmission_(transmission) {
    if (!(transmission_ > 0.0 && transmission_ <= 1.0)) {
      throw std::invalid_argument("LossyNetwork: transmission must lie in (0, 1]");
    }
    if (!unitary_.is_square()) throw std::invalid_argument("LossyNetwork: unitary must be square");
    if (unitarity_residual(unitary_) >= kUnitarityTolerance) {
      throw std::invalid_argument("LossyNetwork: matrix is not unitary to 1e-12");
    }
  }

  const ComplexMatrix& unitary() const noexcept { return unitary_; }
  double transmission() const noexcept { return transmission_; }
  std::size_t modes() const noexcept { return unitary_.rows(); }

 private:
  ComplexMatrix unitary_;
  double transmission_;
};

inline ComplexMatrix transmission_matrix(const LossyNetwork& net) {
  if (net.transmission() == 1.0) return net.unitary();
  return net.unitary().scaled(std::sqrt(net.transmission()));
}

}  // namespace bosonscale

#endif  // BOSONSCALE_HAAR_HPP
