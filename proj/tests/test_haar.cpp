#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bosonscale/haar.hpp"
#include "bosonscale/permanent.hpp"
#include "oracles.hpp"

namespace bs = bosonscale;
using cplx = std::complex<double>;

TEST(SampleCue, RejectsZeroDimension) {
  EXPECT_THROW(bs::sample_cue(0, {1, 0}), std::invalid_argument);
  EXPECT_THROW(bs::sample_cue(bs::kMaxUnitaryDimension + 1, {1, 0}), std::invalid_argument);
}

TEST(SampleCue, OneByOneIsUniformPhase) {
  const int samples = 20000;
  std::vector<double> phases;
  double c = 0.0, s = 0.0;
  for (int i = 0; i < samples; ++i) {
    const cplx z = bs::sample_cue(1, {9, static_cast<std::uint64_t>(i)})(0, 0);
    ASSERT_NEAR(std::abs(z), 1.0, 1e-15);
    phases.push_back((std::arg(z) + std::numbers::pi) / (2 * std::numbers::pi));
    c += std::cos(std::arg(z));
    s += std::sin(std::arg(z));
  }
  // First circular moment vanishes for a uniform phase; SE is 1/sqrt(2S).
  EXPECT_LT(std::abs(c / samples), 4.0 / std::sqrt(2.0 * samples));
  EXPECT_LT(std::abs(s / samples), 4.0 / std::sqrt(2.0 * samples));
  std::vector<double> uniform(samples);
  for (int i = 0; i < samples; ++i) uniform[i] = (i + 0.5) / samples;
  EXPECT_LT(oracle::ks_statistic(phases, uniform), oracle::ks_critical_05(samples, samples));
}

TEST(SampleCue, Unitarity) {
  for (std::size_t m : {1u, 2u, 3u, 8u, 24u, 48u, 100u}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      EXPECT_LT(bs::unitarity_residual(bs::sample_cue(m, {42, s})), 1e-12) << "m = " << m;
    }
  }
}

TEST(SampleCue, Determinism) {
  const auto a = bs::sample_cue(12, {77, 5});
  const auto b = bs::sample_cue(12, {77, 5});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, bs::sample_cue(12, {77, 6}));
  EXPECT_NE(a, bs::sample_cue(12, {78, 5}));
}

TEST(SampleCue, FirstMomentSmall) {
  const std::size_t m = 4;
  const int samples = 100000;
  std::vector<double> v(samples);
  for (int i = 0; i < samples; ++i) v[i] = std::norm(bs::sample_cue(m, {123, static_cast<std::uint64_t>(i)})(0, 0));
  const auto r = oracle::mean_se(v);
  EXPECT_LT(std::abs(r.mean - 0.25), 4 * r.se);
}

TEST(SampleCue, PhaseInvarianceOfPermanentModulus) {
  // |perm| of the leading 2x2 block of U versus of D1 U D2 with independent
  // uniform diagonal phases; a Haar sampler gives the same distribution.
  const std::size_t m = 4, n = 2;
  const int samples = 20000;
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<double> plain(samples), rotated(samples);
  for (int i = 0; i < samples; ++i) {
    const auto u = bs::sample_cue(m, {1, static_cast<std::uint64_t>(i)});
    plain[i] = std::abs(bs::permanent_naive(bs::submatrix(u, bs::SubmatrixSpec::leading(n))));
    auto w = bs::sample_cue(m, {2, static_cast<std::uint64_t>(i)});
    std::vector<cplx> left(m), right(m);
    for (auto& z : left) z = std::polar(1.0, angle(rng));
    for (auto& z : right) z = std::polar(1.0, angle(rng));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) w(r, c) *= left[r] * right[c];
    rotated[i] = std::abs(bs::permanent_naive(bs::submatrix(w, bs::SubmatrixSpec::leading(n))));
  }
  EXPECT_LT(oracle::ks_statistic(plain, rotated), oracle::ks_critical_05(samples, samples));
}

TEST(SampleCue, PhaseCorrectionMatters) {
  // Q from a bare Householder QR has a biased phase on its leading entry; the
  // r_ii phase fix restores the uniform phase a Haar unitary must have.
  const std::size_t m = 3;
  const int samples = 20000;
  std::vector<double> corrected(samples), bare(samples), uniform(samples);
  for (int i = 0; i < samples; ++i) {
    const bs::RngSeed seed{5, static_cast<std::uint64_t>(i)};
    corrected[i] = std::arg(bs::sample_cue(m, seed)(0, 0));
    auto engine = bs::make_engine(seed);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(bs::ginibre(m, engine));
    const Eigen::MatrixXcd q = qr.householderQ();
    bare[i] = std::arg(q(0, 0));
    uniform[i] = -std::numbers::pi + 2 * std::numbers::pi * (i + 0.5) / samples;
  }
  const double critical = oracle::ks_critical_05(samples, samples);
  EXPECT_LT(oracle::ks_statistic(corrected, uniform), critical);
  EXPECT_GT(oracle::ks_statistic(bare, uniform), critical);
}

TEST(LossyNetwork, ValidatesInputs) {
  const auto u = bs::sample_cue(3, {1, 1});
  EXPECT_THROW(bs::LossyNetwork(u, 0.0), std::invalid_argument);
  EXPECT_THROW(bs::LossyNetwork(u, 1.5), std::invalid_argument);
  EXPECT_THROW(bs::LossyNetwork(bs::ComplexMatrix::constant(2, 2, 1.0), 1.0), std::invalid_argument);
  EXPECT_NO_THROW(bs::LossyNetwork(u, 0.3));
}

TEST(TransmissionMatrix, Scaling) {
  const auto u = bs::sample_cue(5, {3, 3});
  EXPECT_EQ(bs::transmission_matrix(bs::LossyNetwork(u, 1.0)), u);
  const auto t = bs::transmission_matrix(bs::LossyNetwork(bs::ComplexMatrix::identity(2), 0.25));
  EXPECT_EQ(t, bs::ComplexMatrix::from_rows({{0.5, 0.0}, {0.0, 0.5}}));
}

TEST(TransmissionMatrix, PermanentHomogeneity) {
  const double tr = 0.6;
  const auto u = bs::sample_cue(6, {8, 1});
  const auto t = bs::transmission_matrix(bs::LossyNetwork(u, tr));
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto spec = bs::SubmatrixSpec::leading(n);
    const cplx lhs = bs::permanent_ryser(bs::submatrix(t, spec));
    const cplx rhs = std::pow(tr, n / 2.0) * bs::permanent_ryser(bs::submatrix(u, spec));
    EXPECT_LT(std::abs(lhs - rhs), 1e-13 * std::max(1.0, std::abs(rhs)));
  }
}
