#include "csb/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "csb/errors.hpp"

namespace csb {
namespace {

std::string sanitize_status(std::string s) {
  for (char &c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"')
      c = ';';
  return s;
}

double series_power(const ObservableSeries &s, std::size_t i) {
  return s.times[i] > 0.0 ? s.delta_e[i] / s.times[i] : 0.0;
}

nlohmann::json row_json(const SweepRow &row) {
  nlohmann::json j;
  j["n_b"] = row.point.n_b;
  j["n_c"] = row.point.n_c;
  j["ratio"] = round_significant(row.ratio());
  j["abs_diff"] = row.abs_diff();
  if (row.result) {
    const ChargingResult &r = *row.result;
    j["tau"] = round_significant(r.tau);
    j["delta_e_tau"] = round_significant(r.delta_e_tau);
    j["delta_e_per_cell"] = round_significant(r.delta_e_per_cell);
    j["entropy_tau"] = round_significant(r.entropy_tau);
    j["entropy_per_cell"] = round_significant(r.entropy_per_cell);
    j["power"] = round_significant(r.power);
  } else {
    for (const char *key : {"tau", "delta_e_tau", "delta_e_per_cell", "entropy_tau",
                            "entropy_per_cell", "power"})
      j[key] = nullptr;
  }
  j["status"] = row.status;
  return j;
}

} // namespace

OutputFormat parse_format(const std::string &text) {
  if (text == "csv")
    return OutputFormat::Csv;
  if (text == "json")
    return OutputFormat::Json;
  throw DomainError("unknown format '" + text + "' (expected csv or json)");
}

std::string format_number(double x) {
  if (x == 0.0)
    return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round_significant(double x) {
  if (!std::isfinite(x) || x == 0.0)
    return x;
  return std::stod(format_number(x));
}

void write_rows_csv(std::span<const SweepRow> rows, std::ostream &out) {
  out << kResultColumns << '\n';
  for (const SweepRow &row : rows) {
    out << row.point.n_b << ',' << row.point.n_c << ',' << format_number(row.ratio()) << ','
        << row.abs_diff() << ',';
    if (row.result) {
      const ChargingResult &r = *row.result;
      out << format_number(r.tau) << ',' << format_number(r.delta_e_tau) << ','
          << format_number(r.delta_e_per_cell) << ',' << format_number(r.entropy_tau) << ','
          << format_number(r.entropy_per_cell) << ',' << format_number(r.power) << ',';
    } else {
      out << ",,,,,,";
    }
    out << sanitize_status(row.status) << '\n';
  }
}

void write_sweep(const SweepResult &result, OutputFormat format, std::ostream &out) {
  if (format == OutputFormat::Csv) {
    write_rows_csv(result.rows, out);
    return;
  }
  const SweepSpec &spec = result.spec;
  nlohmann::json meta;
  meta["version"] = result.version;
  meta["timestamp"] = result.timestamp;
  meta["mode"] = to_string(spec.mode);
  meta["n_b_values"] = spec.n_b_values;
  meta["n_c_values"] = spec.n_c_values;
  meta["ratios"] = spec.ratios;
  meta["omega_b"] = spec.omega_b;
  meta["omega_c"] = spec.omega_c;
  meta["lambda"] = spec.lambda;
  meta["delta"] = spec.delta;
  meta["tau_rule"] = to_string(spec.search.rule);
  meta["t_max"] = spec.search.t_max ? nlohmann::json(*spec.search.t_max) : nlohmann::json("auto");
  meta["coarse_samples"] = spec.search.coarse_samples;
  meta["refine_tol"] = spec.search.refine_tol;
  nlohmann::json windows = nlohmann::json::array();
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow &row : result.rows) {
    rows.push_back(row_json(row));
    windows.push_back(row.result ? nlohmann::json(round_significant(row.result->search_window))
                                 : nlohmann::json(nullptr));
  }
  meta["search_windows"] = windows;
  nlohmann::json doc;
  doc["metadata"] = meta;
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

void write_series(const ObservableSeries &series, OutputFormat format, std::ostream &out) {
  if (format == OutputFormat::Csv) {
    out << kSeriesColumns << '\n';
    for (std::size_t i = 0; i < series.times.size(); ++i)
      out << format_number(series.times[i]) << ',' << format_number(series.delta_e[i]) << ','
          << format_number(series.entropy[i]) << ',' << format_number(series_power(series, i))
          << '\n';
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < series.times.size(); ++i)
    rows.push_back({{"t", round_significant(series.times[i])},
                    {"delta_e", round_significant(series.delta_e[i])},
                    {"entropy", round_significant(series.entropy[i])},
                    {"power", round_significant(series_power(series, i))}});
  nlohmann::json doc;
  doc["metadata"] = {{"columns", kSeriesColumns}};
  doc["rows"] = rows;
  out << doc.dump(2) << '\n';
}

} // namespace csb
