#pragma once

// Tabular results and their CSV / JSON serialization. Floats are written with
// 17 significant digits so a parse reproduces them exactly; non-finite values
// become the strings "inf", "-inf" and "nan" in JSON and bare tokens in CSV.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "otto/config.hpp"
#include "otto/cycle.hpp"
#include "otto/hpz.hpp"

namespace otto::cli {

using Cell = std::variant<double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// JSON as a single object instead of an array (one-row reports).
  bool single_object = false;

  void add_row(std::vector<Cell> row);
};

std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
void write_table(std::ostream& os, const Table& t, OutputFormat format);

/// Writes to `path`, or to stdout when `path` is empty. I/O failures throw
/// std::runtime_error naming the path.
void emit_report(const Table& t, OutputFormat format, const std::string& path);

std::vector<std::string> cycle_report_columns();
std::vector<Cell> cycle_report_cells(const CycleReport& r);

Table cycle_table(const CycleReport& r);
Table sweep_table(const std::vector<SweepRow>& rows);
Table optimization_table(const OptimizationResult& r);
Table hpz_table(const std::vector<HpzDumpRow>& rows);

}  // namespace otto::cli
