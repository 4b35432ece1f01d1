#include "otto/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace otto::cli {

namespace {

// Leading cycle-report columns that describe the configuration.
constexpr std::size_t kConfigColumns = 17;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return csv_field(std::get<std::string>(c));
}

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    return std::isfinite(*d) ? format_double(*d) : json_escape(format_double(*d));
  }
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return json_escape(std::get<std::string>(c));
}

void write_object(std::ostream& os, const Table& t, const std::vector<Cell>& row, const char* indent) {
  os << "{";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? ",\n" : "\n") << indent << "  " << json_escape(t.columns[i]) << ": " << json_cell(row[i]);
  }
  os << "\n" << indent << "}";
}

void append_state(std::vector<std::string>& cols, const std::string& tag) {
  for (const char* f : {"sxx", "spp", "sxp"}) cols.push_back(tag + "_" + f);
}

void append_state(std::vector<Cell>& cells, const GaussianState& s) {
  cells.insert(cells.end(), {s.sxx, s.spp, s.sxp});
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width does not match its header");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  if (t.single_object && t.rows.size() == 1) {
    write_object(os, t, t.rows.front(), "");
    os << "\n";
    return;
  }
  os << "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n  " : "\n  ");
    write_object(os, t, t.rows[r], "  ");
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

void write_table(std::ostream& os, const Table& t, OutputFormat format) {
  if (format == OutputFormat::Csv) write_csv(os, t);
  else write_json(os, t);
}

void emit_report(const Table& t, OutputFormat format, const std::string& path) {
  if (path.empty()) {
    write_table(std::cout, t, format);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_table(out, t, format);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<std::string> cycle_report_columns() {
  std::vector<std::string> cols{"omega_l", "omega_h", "beta_l",   "beta_h",   "eta",          "theta",
                                "gamma_l", "gamma_h", "cutoff_l", "cutoff_h", "mass",         "profile_ab",
                                "tau_ab",  "profile_cd", "tau_cd", "unsqueeze", "coupling"};
  for (const char* tag : {"a", "b", "c", "d", "b_ramp", "d_ramp"}) append_state(cols, tag);
  for (const char* c : {"e_a", "e_b", "e_c", "e_d", "e_b_ramp", "e_d_ramp", "w_ab", "w_cd", "w_tot", "w_ab_ramp",
                        "w_cd_ramp", "w_tot_ramp_only", "unsqueeze_ab", "unsqueeze_cd", "q_in", "q_out",
                        "efficiency", "operational", "eta_s_ab", "eta_s_cd", "beta_s_h"}) {
    cols.emplace_back(c);
  }
  return cols;
}

std::vector<Cell> cycle_report_cells(const CycleReport& r) {
  const EngineConfig& g = r.config;
  std::vector<Cell> cells{g.omega_l,
                          g.omega_h,
                          g.beta_l,
                          g.beta_h,
                          g.hot_squeeze.eta,
                          g.hot_squeeze.theta,
                          g.gamma_l,
                          g.gamma_h,
                          g.cutoff_l,
                          g.cutoff_h,
                          g.mass,
                          to_string(g.ramp_ab.profile),
                          g.ramp_ab.tau,
                          to_string(g.ramp_cd.profile),
                          g.ramp_cd.tau,
                          g.unsqueeze_at_ramp_end,
                          to_string(g.coupling_mode)};
  for (const GaussianState* s : {&r.a, &r.b, &r.c, &r.d, &r.b_ramp, &r.d_ramp}) append_state(cells, *s);
  cells.insert(cells.end(), {r.e_a, r.e_b, r.e_c, r.e_d, r.e_b_ramp, r.e_d_ramp, r.w_ab, r.w_cd, r.w_tot,
                             r.w_ab_ramp, r.w_cd_ramp, r.w_tot_ramp_only, r.unsqueeze_ab, r.unsqueeze_cd, r.q_in,
                             r.q_out, r.efficiency});
  cells.emplace_back(r.operational);
  cells.insert(cells.end(), {r.eta_s_ab, r.eta_s_cd, r.beta_s_h});
  return cells;
}

Table cycle_table(const CycleReport& r) {
  Table t{cycle_report_columns(), {}, true};
  t.add_row(cycle_report_cells(r));
  return t;
}

Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"index", "ok", "error"};
  const auto report_cols = cycle_report_columns();
  t.columns.insert(t.columns.end(), report_cols.begin(), report_cols.end());
  for (const auto& row : rows) {
    std::vector<Cell> cells{static_cast<double>(row.index), row.ok, row.error};
    if (row.ok) {
      const auto rc = cycle_report_cells(row.report);
      cells.insert(cells.end(), rc.begin(), rc.end());
    } else {
      // Keep the configuration columns; results are NaN.
      CycleReport blank;
      blank.config = row.report.config;
      auto rc = cycle_report_cells(blank);
      for (std::size_t i = kConfigColumns; i < rc.size(); ++i) {
        if (std::holds_alternative<double>(rc[i])) rc[i] = std::nan("");
      }
      cells.insert(cells.end(), rc.begin(), rc.end());
    }
    t.add_row(std::move(cells));
  }
  return t;
}

Table optimization_table(const OptimizationResult& r) {
  Table t;
  t.single_object = true;
  t.columns = {"feasible", "evaluations"};
  const auto report_cols = cycle_report_columns();
  t.columns.insert(t.columns.end(), report_cols.begin(), report_cols.end());
  CycleReport report = r.report;
  report.config = r.config;
  std::vector<Cell> cells{r.feasible, static_cast<double>(r.evaluations)};
  const auto rc = cycle_report_cells(report);
  cells.insert(cells.end(), rc.begin(), rc.end());
  t.add_row(std::move(cells));
  return t;
}

Table hpz_table(const std::vector<HpzDumpRow>& rows) {
  Table t;
  t.columns = {"beta", "eta", "gamma", "gamma_coef", "d_xx", "d_xp", "d_pp", "sxx", "spp", "sxp"};
  for (const auto& r : rows) {
    t.add_row({r.beta, r.eta, r.gamma, r.coefficients.gamma_coef, r.coefficients.d_xx, r.coefficients.d_xp,
               r.coefficients.d_pp, r.steady.sxx, r.steady.spp, r.steady.sxp});
  }
  return t;
}

}  // namespace otto::cli
