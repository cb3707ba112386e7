// thermoprobe: figure datasets, sweeps and per-point diagnostics for the
// three-terminal dot-ring heat engine.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thermoprobe/errors.hpp"
#include "thermoprobe/harness/config.hpp"
#include "thermoprobe/harness/dataset.hpp"
#include "thermoprobe/harness/figures.hpp"
#include "thermoprobe/harness/inspect.hpp"
#include "thermoprobe/harness/sweep.hpp"

namespace th = thermoprobe::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> workers;
  std::optional<std::string> branch;
  std::optional<double> tolerance;
};

th::SweepConfig resolve(const Overrides& o) {
  std::filesystem::path path(o.config_path);
  th::SweepConfig c = th::load_config(o.config_path.empty() ? nullptr : &path);
  if (o.out) c.output_path = *o.out;
  if (o.format) c.format = th::parse_format(*o.format);
  if (o.workers) c.workers = *o.workers;
  if (o.branch) c.branch = th::parse_branch(*o.branch);
  if (o.tolerance) c.tolerance = *o.tolerance;
  c.validate();
  return c;
}

void emit(const th::Dataset& d, const th::SweepConfig& c) {
  const std::string text =
      c.format == th::OutputFormat::Csv ? th::to_csv(d) : th::to_json(d);
  if (c.output_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output_path, std::ios::binary);
  if (!out) throw thermoprobe::ValidationError("output.path", "cannot write " + c.output_path);
  out << text;
  std::fprintf(stderr, "%s: %zu rows, %zu gaps -> %s\n", d.id.c_str(), d.rows.size(),
               d.gaps.size(), c.output_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermoprobe: voltage-probe thermoelectric engine toolkit"};
  app.require_subcommand(1);

  Overrides o;
  app.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "output path, '-' for stdout");
  app.add_option("--format", o.format, "csv or json");
  app.add_option("--workers", o.workers, "worker threads");
  app.add_option("--branch", o.branch, "plus or minus");
  app.add_option("--tolerance", o.tolerance, "check tolerance");

  std::string figure_name;
  auto* fig = app.add_subcommand("figure", "emit a figure dataset (fig2..fig6)");
  fig->add_option("id", figure_name, "figure id")->required();

  auto* sweep = app.add_subcommand("sweep", "sweep the (phi, delta, dT_L) grid");

  th::ParameterPoint point;
  auto* dump = app.add_subcommand("onsager-dump", "print L4, L3, L2 at +B and -B");
  auto* check = app.add_subcommand("check", "run the invariant suite on one point");
  for (auto* sub : {dump, check}) {
    sub->add_option("--phi", point.phi, "flux phase (rad)");
    sub->add_option("--delta", point.delta, "X_L^T / X_P^T");
    sub->add_option("--delta-t", point.delta_t_left, "dT_L in units of T");
  }
  for (auto* sub : {fig, sweep, dump, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const th::SweepConfig config = resolve(o);
    if (*fig) {
      const auto t0 = std::chrono::steady_clock::now();
      const th::Dataset d = th::run_figure(th::parse_figure(figure_name), config);
      emit(d, config);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::fprintf(stderr, "%s done in %.2f s\n", d.id.c_str(), secs);
    } else if (*sweep) {
      emit(th::run_sweep(config), config);
    } else if (*dump) {
      emit(th::onsager_dump(config, point), config);
    } else if (*check) {
      const auto results = th::run_checks(config, point);
      emit(th::check_report(config, point, results), config);
      bool all = true;
      for (const auto& r : results) {
        std::fprintf(stderr, "%-24s %s  %.3e  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                     r.value, r.detail.c_str());
        all = all && r.passed;
      }
      return all ? kExitOk : kExitNumerical;
    }
  } catch (const thermoprobe::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const thermoprobe::Error& e) {
    std::fprintf(stderr, "numerical failure (%s): %s\n", thermoprobe::to_string(e.kind()),
                 e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
