#ifndef BOSONSCALE_COMMANDS_HPP
#define BOSONSCALE_COMMANDS_HPP

// Record producers behind the command-line subcommands. Each returns the
// records the CLI prints, so the library and the CLI agree by construction.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosonscale/asymptotics.hpp"
#include "bosonscale/exact_averages.hpp"
#include "bosonscale/log_domain.hpp"
#include "bosonscale/montecarlo.hpp"
#include "bosonscale/records.hpp"

namespace bosonscale::commands {

enum class LogBase { Natural, Ten };

inline double in_base(log_real ln, LogBase base) {
  return static_cast<double>(base == LogBase::Ten ? ln / std::numbers::ln10_v<log_real> : ln);
}

inline std::string base_tag(LogBase base) { return base == LogBase::Ten ? "log10" : "ln"; }

inline double ratio(std::size_t n, std::size_t m) {
  return static_cast<double>(m) / static_cast<double>(n);
}

inline OutputRecord make_record(std::size_t n, std::size_t m, double t, Quantity q, double value) {
  return OutputRecord{n, m, ratio(n, m), t, q, value, {}};
}

/// Exact P_{n|m} and R_{n|m}.
inline std::vector<OutputRecord> exact(std::size_t n, std::size_t m, double t, LogBase base) {
  const auto p = coincidence_probability(n, m, t);
  const auto r = grouped_bound(n, m, t);
  std::vector<OutputRecord> out;
  for (auto [q, v] : {std::pair{Quantity::ExactP, p}, std::pair{Quantity::ExactR, r}}) {
    auto rec = make_record(n, m, t, q, in_base(v.ln(), base));
    rec.extra = {{"log", base_tag(base)}, {"linear", format_number(v.value())}};
    out.push_back(std::move(rec));
  }
  return out;
}

/// Asymptotic ln P (or ln R for the grouped regime).
inline std::vector<OutputRecord> asym(ScalingRegime regime, std::size_t n, std::size_t m, double t,
                                      LogBase base) {
  const double ln_value = asymptotic_log_probability(regime, n, m, t);
  const Quantity q = regime == ScalingRegime::GroupedBound ? Quantity::AsymR : Quantity::AsymP;
  auto rec = make_record(n, m, t, q, in_base(ln_value, base));
  rec.extra = {{"log", base_tag(base)},
               {"regime", std::string(to_string(regime))},
               {"exponent", format_number(scaling_exponent(regime, ratio(n, m), t))}};
  return {rec};
}

/// Monte-Carlo mean, relative error bar and relative error against the exact
/// P_{n|m}. The worker count is deliberately absent from the output.
inline std::vector<OutputRecord> sample(std::size_t n, std::size_t m, double t, std::size_t samples,
                                        std::uint64_t seed, std::size_t workers, LogBase base) {
  EnsembleConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.t = t;
  cfg.samples = samples;
  cfg.seed = RngSeed{seed, 0};
  cfg.workers = workers;
  const auto est = estimate_coincidence(cfg);
  const double exact_ln = static_cast<double>(coincidence_probability(n, m, t).ln());
  const auto rel = relative_error(est, exact_ln);

  const std::vector<std::pair<std::string, std::string>> meta = {
      {"S", std::to_string(est.samples)},
      {"seed", std::to_string(seed)},
      {"subEnsembles", std::to_string(est.sub_ensembles)},
      {"discarded", std::to_string(est.discarded)},
      {"mean", format_number(est.mean)},
      {"sigma", format_number(est.std_error)},
  };
  auto mean = make_record(n, m, t, Quantity::McMean, in_base(est.ln_mean, base));
  mean.extra = meta;
  mean.extra.insert(mean.extra.begin(), {"log", base_tag(base)});
  auto sigma = make_record(n, m, t, Quantity::McSigma, rel.rel_sigma);
  sigma.extra = meta;
  auto err = make_record(n, m, t, Quantity::RelErr, rel.rel_err);
  err.extra = meta;
  return {mean, sigma, err};
}

struct FigureOptions {
  int which = 1;
  std::size_t n_min = 1;
  std::size_t n_max = 0;  // 0 selects the figure's default
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

inline std::size_t default_n_max(int which) { return which == 2 ? 14 : 100; }

/// Figure data in log10 at t = 1.
///   1: exact-P and asym-P (general regime) vs n for k in {1, 2, 4, 6}
///   2: k = 2 Monte Carlo: exact-P, asym-P, mc-mean, mc-sigma, rel-err
///   3: exact-R and asym-R vs n for k in {2, ..., 6}
inline std::vector<OutputRecord> figure(const FigureOptions& opt) {
  if (opt.which < 1 || opt.which > 3) throw std::invalid_argument("figure: which must be 1, 2 or 3");
  const std::size_t n_max = opt.n_max == 0 ? default_n_max(opt.which) : opt.n_max;
  if (opt.n_min < 1 || opt.n_min > n_max) throw std::invalid_argument("figure: need 1 <= n-min <= n-max");
  constexpr double t = 1.0;
  const LogBase base = LogBase::Ten;
  std::vector<OutputRecord> out;

  if (opt.which == 1) {
    for (std::size_t k : {1, 2, 4, 6})
      for (std::size_t n = opt.n_min; n <= n_max; ++n) {
        const std::size_t m = k * n;
        out.push_back(make_record(n, m, t, Quantity::ExactP,
                                  in_base(coincidence_probability(n, m, t).ln(), base)));
        out.push_back(make_record(
            n, m, t, Quantity::AsymP,
            in_base(asymptotic_log_probability(ScalingRegime::GeneralSubmatrix, n, m, t), base)));
      }
  } else if (opt.which == 2) {
    for (std::size_t n = opt.n_min; n <= n_max; ++n) {
      const std::size_t m = 2 * n;
      const log_real exact_ln = coincidence_probability(n, m, t).ln();
      EnsembleConfig cfg;
      cfg.n = n;
      cfg.m = m;
      cfg.t = t;
      cfg.samples = opt.samples;
      cfg.seed = RngSeed{opt.seed + n, 0};
      cfg.workers = opt.workers;
      const auto est = estimate_coincidence(cfg);
      const auto rel = relative_error(est, static_cast<double>(exact_ln));
      out.push_back(make_record(n, m, t, Quantity::ExactP, in_base(exact_ln, base)));
      out.push_back(make_record(
          n, m, t, Quantity::AsymP,
          in_base(asymptotic_log_probability(ScalingRegime::GeneralSubmatrix, n, m, t), base)));
      out.push_back(make_record(n, m, t, Quantity::McMean, in_base(est.ln_mean, base)));
      out.push_back(make_record(n, m, t, Quantity::McSigma, rel.rel_sigma));
      out.push_back(make_record(n, m, t, Quantity::RelErr, rel.rel_err));
    }
  } else {
    for (std::size_t k = 2; k <= 6; ++k)
      for (std::size_t n = opt.n_min; n <= n_max; ++n) {
        const std::size_t m = k * n;
        out.push_back(make_record(n, m, t, Quantity::ExactR, in_base(grouped_bound(n, m, t).ln(), base)));
        out.push_back(make_record(
            n, m, t, Quantity::AsymR,
            in_base(asymptotic_log_probability(ScalingRegime::GroupedBound, n, m, t), base)));
      }
  }
  return out;
}

}  // namespace bosonscale::commands

#endif  // BOSONSCALE_COMMANDS_HPP
