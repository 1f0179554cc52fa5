#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csb/optimizer.hpp"

namespace csb {

enum class SweepMode {
  Grid,      // every (n_b, n_c) in n_b_values x n_c_values
  RatioScan, // n_c = round(ratio * n_b) for every n_b and ratio
  Diagonal,  // n_c = n_b
};

const char *to_string(SweepMode mode);

struct SweepSpec {
  SweepMode mode = SweepMode::Grid;
  std::vector<int> n_b_values;
  std::vector<int> n_c_values;
  std::vector<double> ratios;
  double omega_b = 1.0;
  double omega_c = 1.0;
  double lambda = 1.0;
  double delta = 0.0;
  SearchPolicy search;
};

void validate(const SweepSpec &spec);

struct SweepPoint {
  int n_b = 0;
  int n_c = 0;
  // Index into spec.ratios for RatioScan points.
  std::optional<std::size_t> ratio_index;
};

// Points in request order: n_b outer, n_c (or ratio) inner.
std::vector<SweepPoint> expand(const SweepSpec &spec);

struct SweepRow {
  SweepPoint point;
  std::optional<ChargingResult> result;
  std::string status = "ok";

  double ratio() const { return static_cast<double>(point.n_c) / point.n_b; }
  int abs_diff() const { return point.n_b > point.n_c ? point.n_b - point.n_c : point.n_c - point.n_b; }
  bool ok() const { return result.has_value(); }
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::string timestamp;
  std::string version;
  int workers = 1;
};

// Static strided partition of points over workers; rows are stored by point
// index, so output is independent of worker count. A failing point records its
// error in the row status and does not stop the sweep.
SweepResult run_sweep(const SweepSpec &spec, int workers);

struct RatioDeviation {
  double ratio = 0.0;
  double max_deviation = 0.0;
  bool flagged = false;
};

struct UniformityReport {
  std::vector<int> n_b_family;
  std::vector<RatioDeviation> points;
  double max_deviation = 0.0;
  double threshold = 0.01;
  std::size_t flagged_count() const;
};

// Max pairwise spread of delta_e_per_cell across the n_b family at each ratio.
// Throws DomainError unless the result is a RatioScan whose families share one
// complete ratio grid.
UniformityReport uniformity_report(const SweepResult &results, double threshold = 0.01);

} // namespace csb
