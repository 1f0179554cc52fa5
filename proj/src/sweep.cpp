#include "csb/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "csb/errors.hpp"
#include "csb/version.hpp"

namespace csb {
namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

BatteryConfig point_config(const SweepSpec &spec, const SweepPoint &p) {
  BatteryConfig c;
  c.n_b = p.n_b;
  c.n_c = p.n_c;
  c.omega_b = spec.omega_b;
  c.omega_c = spec.omega_c;
  c.lambda = spec.lambda;
  c.delta = spec.delta;
  return c;
}

} // namespace

const char *to_string(SweepMode mode) {
  switch (mode) {
  case SweepMode::Grid:
    return "grid";
  case SweepMode::RatioScan:
    return "ratio";
  case SweepMode::Diagonal:
    return "diagonal";
  }
  return "unknown";
}

void validate(const SweepSpec &spec) {
  if (spec.n_b_values.empty())
    throw DomainError("sweep needs at least one n_b value");
  if (spec.mode == SweepMode::Grid && spec.n_c_values.empty())
    throw DomainError("grid sweep needs at least one n_c value");
  if (spec.mode == SweepMode::RatioScan) {
    if (spec.ratios.empty())
      throw DomainError("ratio sweep needs at least one ratio");
    for (double r : spec.ratios)
      if (!(r > 0.0) || !std::isfinite(r))
        throw DomainError("ratios must be positive");
  }
  validate(spec.search);
}

std::vector<SweepPoint> expand(const SweepSpec &spec) {
  validate(spec);
  std::vector<SweepPoint> points;
  for (int nb : spec.n_b_values) {
    switch (spec.mode) {
    case SweepMode::Grid:
      for (int nc : spec.n_c_values)
        points.push_back({nb, nc, std::nullopt});
      break;
    case SweepMode::RatioScan:
      for (std::size_t i = 0; i < spec.ratios.size(); ++i)
        points.push_back({nb, static_cast<int>(std::lround(spec.ratios[i] * nb)), i});
      break;
    case SweepMode::Diagonal:
      points.push_back({nb, nb, std::nullopt});
      break;
    }
  }
  return points;
}

SweepResult run_sweep(const SweepSpec &spec, int workers) {
  if (workers < 1)
    throw DomainError("workers must be ≥ 1");
  const std::vector<SweepPoint> points = expand(spec);

  SweepResult out;
  out.spec = spec;
  out.timestamp = utc_timestamp();
  out.version = kVersion;
  out.workers = workers;
  out.rows.resize(points.size());

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < points.size(); i += stride) {
      SweepRow &row = out.rows[i];
      row.point = points[i];
      try {
        row.result = find_optimal_tau(point_config(spec, points[i]), spec.search);
        row.status = "ok";
      } catch (const std::exception &e) {
        row.result.reset();
        row.status = std::string("error: ") + e.what();
      }
    }
  };

  const auto stride = static_cast<std::size_t>(workers);
  if (workers == 1 || points.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(stride, points.size()); ++w)
      pool.emplace_back(work, w, stride);
  }
  return out;
}

std::size_t UniformityReport::flagged_count() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const RatioDeviation &r) { return r.flagged; }));
}

UniformityReport uniformity_report(const SweepResult &results, double threshold) {
  if (results.spec.mode != SweepMode::RatioScan)
    throw DomainError("uniformity report needs a ratio sweep");
  const std::size_t nratios = results.spec.ratios.size();

  // n_b -> per-ratio delta_e_per_cell
  std::map<int, std::vector<std::optional<double>>> families;
  for (const SweepRow &row : results.rows) {
    if (!row.point.ratio_index)
      throw DomainError("row without ratio index in a ratio sweep");
    auto &family = families[row.point.n_b];
    family.resize(nratios);
    if (row.ok())
      family[*row.point.ratio_index] = row.result->delta_e_per_cell;
  }

  UniformityReport report;
  report.threshold = threshold;
  for (const auto &[nb, values] : families) {
    report.n_b_family.push_back(nb);
    for (std::size_t i = 0; i < nratios; ++i)
      if (!values[i])
        throw DomainError("ratio grid mismatch: n_b = " + std::to_string(nb) +
                          " lacks a result at ratio " + std::to_string(results.spec.ratios[i]));
  }
  for (std::size_t i = 0; i < nratios; ++i) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto &[nb, values] : families) {
      const double v = *values[i];
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
    RatioDeviation rd;
    rd.ratio = results.spec.ratios[i];
    rd.max_deviation = hi - lo;
    rd.flagged = rd.max_deviation > threshold;
    report.max_deviation = std::max(report.max_deviation, rd.max_deviation);
    report.points.push_back(rd);
  }
  return report;
}

} // namespace csb
