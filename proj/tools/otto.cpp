// Command-line front end for the Otto engine simulator.
//
//   otto cycle <config>        one cycle report
//   otto sweep <config>        run_cycle over the [sweep] grid
//   otto optimize <config>     maximize output work within the [optimize] box
//   otto fig r-driving         eta_s(tau) data
//   otto fig cov               late-time covariance surface
//   otto hpz-dump <config>     HPZ coefficients over the [hpz] grid
//
// Exit status: 0 success, 1 invalid input, 2 numerical failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "otto/config.hpp"
#include "otto/cycle.hpp"
#include "otto/errors.hpp"
#include "otto/figures.hpp"
#include "otto/report.hpp"

namespace {

using namespace otto;
using namespace otto::cli;

constexpr int kExitInvalid = 1;
constexpr int kExitNumeric = 2;

struct Overrides {
  std::string format;
  std::string out;
  std::optional<double> tol;
  std::string tau_grid;
  std::string gamma_grid;
  std::string temp_grid;
};

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  if (o.format == "csv") cfg.format = OutputFormat::Csv;
  if (o.format == "json") cfg.format = OutputFormat::Json;
  if (!o.out.empty()) cfg.out = o.out;
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw DomainError("--tol must be positive");
    cfg.engine.integrator.rel = *o.tol;
    cfg.engine.quadrature.rel_tol = *o.tol;
  }
  if (!o.tau_grid.empty()) cfg.figure.tau_grid = Grid::parse(o.tau_grid);
  if (!o.gamma_grid.empty()) cfg.figure.gamma_grid = Grid::parse(o.gamma_grid);
  if (!o.temp_grid.empty()) cfg.figure.temp_grid = Grid::parse(o.temp_grid);
}

Table run(RunMode mode, const RunConfig& cfg) {
  switch (mode) {
    case RunMode::Cycle:
      return cycle_table(run_cycle(cfg.engine));
    case RunMode::Sweep:
      if (cfg.sweep.empty()) throw DomainError("sweep needs at least one [sweep] key");
      return sweep_table(sweep(cfg.engine, cfg.sweep_axes()));
    case RunMode::Optimize:
      if (cfg.optimize.empty()) throw DomainError("optimize needs at least one [optimize] bound");
      return optimization_table(maximize_output_work(cfg.engine, cfg.optimize));
    case RunMode::FigRDriving:
      return r_driving_table(cfg);
    case RunMode::FigCov:
      return cov_table(cfg);
    case RunMode::HpzDump:
      return hpz_dump_table(cfg);
  }
  throw DomainError("unknown run mode");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Otto engine simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides ov;
  app.add_option("--format", ov.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", ov.out, "Output file (default: stdout)");
  app.add_option("--tol", ov.tol, "Relative tolerance for ODEs and quadrature");

  std::string config_path;
  auto* cycle_cmd = app.add_subcommand("cycle", "Run one Otto cycle");
  cycle_cmd->add_option("config", config_path, "Config file")->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "Run cycles over the [sweep] grid");
  sweep_cmd->add_option("config", config_path, "Config file")->required();
  auto* opt_cmd = app.add_subcommand("optimize", "Maximize output work within the [optimize] bounds");
  opt_cmd->add_option("config", config_path, "Config file")->required();
  auto* hpz_cmd = app.add_subcommand("hpz-dump", "Dump HPZ coefficients over the [hpz] grid");
  hpz_cmd->add_option("config", config_path, "Config file")->required();

  auto* fig_cmd = app.add_subcommand("fig", "Emit figure data");
  fig_cmd->require_subcommand(1);
  auto* rdrive_cmd = fig_cmd->add_subcommand("r-driving", "End-of-ramp squeezing versus ramp duration");
  rdrive_cmd->add_option("--tau-grid", ov.tau_grid, "start:stop:count[:log]");
  rdrive_cmd->add_option("--config", config_path, "Config overriding the preset");
  auto* cov_cmd = fig_cmd->add_subcommand("cov", "Late-time covariances versus damping and temperature");
  cov_cmd->add_option("--gamma-grid", ov.gamma_grid, "start:stop:count[:log]");
  cov_cmd->add_option("--temp-grid", ov.temp_grid, "start:stop:count[:log]");
  cov_cmd->add_option("--config", config_path, "Config overriding the preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    RunMode mode = RunMode::Cycle;
    RunConfig cfg;
    if (rdrive_cmd->parsed() || cov_cmd->parsed()) {
      mode = rdrive_cmd->parsed() ? RunMode::FigRDriving : RunMode::FigCov;
      cfg = config_path.empty() ? preset_config(mode == RunMode::FigRDriving ? "fig-r-driving" : "fig-cov")
                                : load_config(config_path);
    } else {
      cfg = load_config(config_path);
      if (sweep_cmd->parsed()) mode = RunMode::Sweep;
      else if (opt_cmd->parsed()) mode = RunMode::Optimize;
      else if (hpz_cmd->parsed()) mode = RunMode::HpzDump;
    }
    apply_overrides(cfg, ov);
    emit_report(run(mode, cfg), cfg.format, cfg.out);
    return 0;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << " (last good abscissa " << e.last_good_time() << ")\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
