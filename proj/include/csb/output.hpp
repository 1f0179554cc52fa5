#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "csb/dynamics.hpp"
#include "csb/sweep.hpp"

namespace csb {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string &text);

// 12 significant digits, shortest form ("%.12g").
std::string format_number(double x);
// x rounded to 12 significant digits.
double round_significant(double x);

// Fixed column order of result tables.
inline constexpr const char *kResultColumns =
    "n_b,n_c,ratio,abs_diff,tau,delta_e_tau,delta_e_per_cell,entropy_tau,entropy_per_cell,power,status";
inline constexpr const char *kSeriesColumns = "t,delta_e,entropy,power";

void write_rows_csv(std::span<const SweepRow> rows, std::ostream &out);
void write_sweep(const SweepResult &result, OutputFormat format, std::ostream &out);
void write_series(const ObservableSeries &series, OutputFormat format, std::ostream &out);

} // namespace csb
