// bosonscale: exact, asymptotic and Monte-Carlo unitary-averaged
// coincidence rates.
//
//   bosonscale exact  --n 2 --m 4 --t 1
//   bosonscale asym   --regime general --n 100 --m 200
//   bosonscale sample --n 2 --m 4 --S 40000 --seed 7 --workers 4
//   bosonscale figure 2 --out fig2.csv
//
// Exit codes: 0 success, 2 usage error, 3 domain or size-limit error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosonscale/commands.hpp"
#include "bosonscale/errors.hpp"
#include "bosonscale/records.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

namespace cmd = bosonscale::commands;

struct Common {
  std::size_t n = 1;
  std::size_t m = 1;
  double t = 1.0;
  bool base10 = false;
  std::string format = "csv";
};

void add_format(CLI::App* app, std::string& format) {
  app->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json-lines"}))
      ->capture_default_str();
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--n", c.n, "Photons (sub-matrix size)")->required()->check(CLI::PositiveNumber);
  app->add_option("--m", c.m, "Modes")->required()->check(CLI::PositiveNumber);
  app->add_option("--t", c.t, "Intensity transmission in (0, 1]")->capture_default_str();
  app->add_flag("--base10", c.base10, "Report log10 instead of natural log");
  add_format(app, c.format);
}

void emit(const std::vector<bosonscale::OutputRecord>& records, const std::string& format,
          bosonscale::CsvLayout layout, const std::string& out_path) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
    os = &file;
  }
  if (format == "json-lines") {
    bosonscale::write_json_lines(*os, records);
  } else {
    bosonscale::write_csv(*os, records, layout);
  }
  os->flush();
}

cmd::LogBase base_of(const Common& c) { return c.base10 ? cmd::LogBase::Ten : cmd::LogBase::Natural; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitary-averaged boson-sampling coincidence rates"};
  app.require_subcommand(1);

  Common exact_opts;
  auto* exact = app.add_subcommand("exact", "Exact P_{n|m} and grouped bound R_{n|m}");
  add_common(exact, exact_opts);

  Common asym_opts;
  std::string regime_name;
  auto* asym = app.add_subcommand("asym", "Large-n asymptotic log probability");
  add_common(asym, asym_opts);
  asym->add_option("--regime", regime_name, "entire | gaussian | general | grouped")
      ->required()
      ->check(CLI::IsMember({"entire", "gaussian", "general", "grouped"}));

  Common sample_opts;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  auto* sample = app.add_subcommand("sample", "Monte-Carlo estimate over CUE samples");
  add_common(sample, sample_opts);
  sample->add_option("--S", samples, "Number of unitary samples")->capture_default_str();
  sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample->add_option("--workers", workers, "Worker threads (0 = all cores)")->capture_default_str();

  cmd::FigureOptions fig;
  std::string fig_out;
  std::string fig_format = "csv";
  auto* figure = app.add_subcommand("figure", "Emit figure data (CSV: n,k,t,quantity,value)");
  figure->add_option("which", fig.which, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
  figure->add_option("--n-min", fig.n_min, "Smallest n")->capture_default_str();
  figure->add_option("--n-max", fig.n_max, "Largest n (default 100; 14 for figure 2)");
  figure->add_option("--S", fig.samples, "Samples per point (figure 2)")->capture_default_str();
  figure->add_option("--seed", fig.seed, "RNG seed (figure 2)")->capture_default_str();
  figure->add_option("--workers", fig.workers, "Worker threads (figure 2)")->capture_default_str();
  figure->add_option("--out", fig_out, "Output file (default stdout)");
  add_format(figure, fig_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    using bosonscale::CsvLayout;
    if (*exact) {
      emit(cmd::exact(exact_opts.n, exact_opts.m, exact_opts.t, base_of(exact_opts)),
           exact_opts.format, CsvLayout::Record, "");
    } else if (*asym) {
      const auto regime = bosonscale::parse_regime(regime_name);
      emit(cmd::asym(*regime, asym_opts.n, asym_opts.m, asym_opts.t, base_of(asym_opts)),
           asym_opts.format, CsvLayout::Record, "");
    } else if (*sample) {
      emit(cmd::sample(sample_opts.n, sample_opts.m, sample_opts.t, samples, seed, workers,
                       base_of(sample_opts)),
           sample_opts.format, CsvLayout::Record, "");
    } else if (*figure) {
      emit(cmd::figure(fig), fig_format, CsvLayout::Figure, fig_out);
    }
  } catch (const bosonscale::size_limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
