#pragma once

// Flat key-value run configuration:
//
//   # comment
//   [section]
//   key = value
//
// Sections: run, engine, ramp, numerics, sweep, optimize, figure, hpz.
// Every physical quantity is in units where omega_L = 1.

#include <cstddef>
#include <string>
#include <vector>

#include "otto/cycle.hpp"
#include "otto/errors.hpp"

namespace otto::cli {

/// Malformed config text; line() is 1-based, 0 when not tied to a line.
class ConfigError : public DomainError {
 public:
  ConfigError(const std::string& what, std::size_t line) : DomainError(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// `start:stop:count[:log]`, inclusive of both ends.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;
  bool log = false;

  static Grid parse(const std::string& text);
  std::vector<double> values() const;
  std::string str() const;
};

enum class RunMode { Cycle, Sweep, Optimize, FigRDriving, FigCov, HpzDump };
enum class OutputFormat { Csv, Json };

struct FigureSettings {
  Grid tau_grid{1e-4, 1e3, 40, true};
  Grid gamma_grid{1e-4, 0.5, 9, true};
  Grid temp_grid{1e-3, 10.0, 9, true};
  double omega = 1.0;  // cov figure oscillator frequency
};

struct HpzSettings {
  Grid beta_grid{1.0, 1.0, 1, false};
  Grid eta_grid{0.0, 1.0, 3, false};
  Grid gamma_grid{1e-3, 1e-1, 3, true};
  double omega = 1.0;
  double theta = 0.0;
  double cutoff = 1000.0;
};

struct SweepSpec {
  std::string key;
  Grid grid;
};

struct RunConfig {
  EngineConfig engine;
  RunMode mode = RunMode::Cycle;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // empty: stdout
  std::string preset;
  std::vector<SweepSpec> sweep;
  std::vector<SearchBound> optimize;
  FigureSettings figure;
  HpzSettings hpz;

  std::vector<SweepAxis> sweep_axes() const;
};

/// Built-in presets: "fig-r-driving", "fig-cov". Throws ConfigError otherwise.
RunConfig preset_config(const std::string& name);

/// Parses config text; `preset` in [run] is applied before any other key.
/// Throws ConfigError on syntax errors and DomainError listing every
/// physical-constraint violation.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& cfg);

std::string to_string(RunMode mode);
std::string to_string(RampProfile profile);
std::string to_string(CouplingMode mode);

}  // namespace otto::cli
