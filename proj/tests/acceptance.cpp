// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bosonscale/bosonscale.hpp"
#include "cli_runner.hpp"
#include "oracles.hpp"

namespace bs = bosonscale;
using cplx = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bs::EnsembleConfig ensemble(std::size_t n, std::size_t m, double t, std::size_t samples, std::uint64_t seed) {
  bs::EnsembleConfig c;
  c.n = n;
  c.m = m;
  c.t = t;
  c.samples = samples;
  c.seed = {seed, 0};
  return c;
}

Outcome ryser_matches_naive() {
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (int i = 0; i < 100; ++i) {
      const auto a = oracle::random_complex(n, n, rng);
      const cplx naive = bs::permanent_naive(a);
      const cplx ryser = bs::permanent_ryser(a);
      worst = std::max(worst, std::abs(ryser - naive) / std::abs(naive));
    }
  return {worst < 1e-10, fmt("700 matrices, n = 2..8, max rel err %.3g (< 1e-10)", worst)};
}

Outcome sampler_matches_exact_probability() {
  const std::vector<std::pair<std::size_t, std::size_t>> cases{{1, 2}, {2, 2}, {2, 4}, {3, 6}, {4, 8}};
  double worst = 0.0;
  std::uint64_t seed = 500;
  for (auto [n, m] : cases)
    for (double t : {0.5, 1.0}) {
      const auto est = bs::estimate_coincidence(ensemble(n, m, t, 100000, ++seed));
      const double exact = bs::coincidence_probability(n, m, t).value();
      worst = std::max(worst, std::abs(est.mean - exact) / est.std_error);
    }
  return {worst < 4.0, fmt("10 configurations, S = 1e5, max |mean - P| / sigma = %.3f (< 4)", worst)};
}

Outcome multiplicity_identity() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> modes(1, 10000);
  std::uniform_real_distribution<double> trans(0.05, 1.0);
  long double worst = 0.0L;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = modes(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, m)(rng);
    const double t = trans(rng);
    const long double lhs = bs::grouped_bound(n, m, t).ln() - bs::coincidence_probability(n, m, t).ln();
    worst = std::max(worst, std::abs(lhs - bs::log_binomial(m, n)));
  }
  return {worst < 1e-12L,
          fmt("1000 random (n, m <= 1e4, t), max |ln R - ln P - ln C(m, n)| = %.3g (< 1e-12)",
              static_cast<double>(worst))};
}

Outcome point_estimate_24_48() {
  const double v = static_cast<double>(bs::coincidence_probability(24, 48, 1.0).log10());
  const double ref = oracle::ln_coincidence(24, 48) / std::log(10.0);
  const bool ok = std::abs(v + 18.72) <= 0.01 && std::abs(v - ref) < 1e-12;
  return {ok, fmt("log10 P(24|48) = %.6f, big-integer %.6f, target -18.72 +- 0.01", v, ref)};
}

Outcome flat_relative_error_k2() {
  int good = 0, points = 0;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const std::size_t m = 2 * n;
    const auto est = bs::estimate_coincidence(ensemble(n, m, 1.0, 40000, 7000 + n));
    const double exact_ln = static_cast<double>(bs::coincidence_probability(n, m, 1.0).ln());
    const auto rel = bs::relative_error(est, exact_ln);
    ++points;
    worst = std::max(worst, std::abs(rel.rel_err));
    if (std::abs(rel.rel_err) <= 0.03 && std::abs(rel.rel_err) < 3 * rel.rel_sigma) ++good;
  }
  const bool ok = good >= 0.95 * points;
  return {ok, fmt("k = 2, n = 2..12, S = 4e4: %.0f of %.0f points within 3%% and 3 sigma, max |rel err| %.4f",
                  good, points, worst)};
}

Outcome asymptotic_convergence() {
  bool ok = true;
  double worst20 = 0.0;
  for (std::size_t k : {1u, 2u, 4u, 6u}) {
    double previous = HUGE_VAL;
    for (std::size_t n = 10; n <= 200; ++n) {
      const double exact = static_cast<double>(bs::coincidence_probability(n, k * n, 1.0).ln());
      const double asym = bs::asymptotic_log_probability(bs::ScalingRegime::GeneralSubmatrix, n, k * n, 1.0);
      const double err = std::abs(asym - exact);
      if (err > previous) ok = false;
      previous = err;
      if (n == 20) worst20 = std::max(worst20, err / std::abs(exact));
    }
  }
  ok = ok && worst20 < 0.02;
  return {ok, fmt("k in {1, 2, 4, 6}: error non-increasing on n = 10..200, max rel err at n = 20 is %.3g (< 0.02)",
                  worst20)};
}

Outcome grouped_gain() {
  const double gain = static_cast<double>(bs::grouped_bound(100, 600, 1.0).log10() -
                                          bs::coincidence_probability(100, 600, 1.0).log10());
  const double ref = oracle::ln_ratio(oracle::binomial(600, 100), 1) / std::log(10.0);
  const bool ok = std::abs(gain - ref) < 1e-9 && gain > 100.0;
  return {ok, fmt("log10 R - log10 P at 100|600 = %.6f, log10 C(600, 100) = %.6f, > 100", gain, ref)};
}

Outcome permanental_product_mc() {
  const cplx x = 1.0, y = 1.0;
  const auto est = bs::estimate_permanental_product(x, y, 3, 1.0, 1000000, {31, 0});
  const cplx exact = bs::averaged_permanental_product(x, y, 3, 1.0);
  const double z = std::abs(est.mean.real() - exact.real()) / est.std_error_real;
  const bool ok = z < 3.0 && std::abs(est.mean.imag() - exact.imag()) < 3 * est.std_error_imag + 1e-12;
  return {ok, fmt("m = 3, x = y = 1, S = 1e6: mean %.5f, exact %.5f, %.2f sigma (< 3)", est.mean.real(),
                  exact.real(), z)};
}

Outcome haar_moments() {
  const int samples = 100000;
  double worst_z = 0.0, worst_res = 0.0;
  for (std::size_t m : {2u, 4u, 8u}) {
    const std::size_t cells = m * m;
    // Running sums of x and x^2 for x = |U_ij|^2 and x = |U_ij|^4.
    std::vector<long double> s2(cells), q2(cells), s4(cells), q4(cells);
    for (int s = 0; s < samples; ++s) {
      const auto u = bs::sample_cue(m, {4000 + m, static_cast<std::uint64_t>(s)});
      worst_res = std::max(worst_res, bs::unitarity_residual(u));
      for (std::size_t c = 0; c < cells; ++c) {
        const long double p = std::norm(u(c / m, c % m));
        s2[c] += p;
        q2[c] += p * p;
        s4[c] += p * p;
        q4[c] += p * p * p * p;
      }
    }
    const auto z = [&](long double sum, long double sq, double target) {
      const long double mean = sum / samples;
      const long double var = (sq - samples * mean * mean) / (samples - 1);
      return static_cast<double>(std::abs(mean - target) / std::sqrt(var / samples));
    };
    const double m2 = 1.0 / m, m4 = 2.0 / (m * (m + 1.0));
    for (std::size_t c = 0; c < cells; ++c)
      worst_z = std::max({worst_z, z(s2[c], q2[c], m2), z(s4[c], q4[c], m4)});
  }
  const bool ok = worst_z < 4.0 && worst_res < 1e-12;
  return {ok, fmt("m in {2, 4, 8}, S = 1e5, every entry: max z %.3f (< 4), max unitarity residual %.3g (< 1e-12)",
                  worst_z, worst_res)};
}

Outcome worker_determinism() {
  const std::string base = "sample --n 4 --m 8 --t 0.9 --S 4000 --seed 17";
  const auto one = cli::run(base + " --workers 1");
  bool ok = one.exit_code == 0 && !one.out.empty();
  for (int w : {2, 3, 8}) {
    const auto r = cli::run(base + " --workers " + std::to_string(w));
    ok = ok && r.exit_code == 0 && r.out == one.out;
  }
  return {ok, "sample output byte-identical for --workers 1, 2, 3, 8"};
}

}  // namespace

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
  double budget_seconds;
};

int main() {
  const std::vector<Criterion> criteria{
      {"AC1 ", ryser_matches_naive, 10},
      {"AC2 ", sampler_matches_exact_probability, 120},
      {"AC3 ", multiplicity_identity, 1},
      {"AC4 ", point_estimate_24_48, 1},
      {"AC5 ", flat_relative_error_k2, 600},
      {"AC6 ", asymptotic_convergence, 1},
      {"AC7 ", grouped_gain, 1},
      {"AC8 ", permanental_product_mc, 60},
      {"AC9 ", haar_moments, 60},
      {"AC10", worker_determinism, 60},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && seconds < c.budget_seconds;
    if (!pass) ++failures;
    std::printf("[%s] %s %s; %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds,
                c.budget_seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
