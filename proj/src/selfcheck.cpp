#include <algorithm>
#include <cmath>
#include <random>

#include "csb/analytic.hpp"
#include "csb/cli.hpp"
#include "csb/oracle.hpp"

namespace csb::cli {
namespace {

constexpr double kPopulationTol = 1e-10;
constexpr double kClosureTol = 1e-12;
constexpr double kAnalyticTol = 1e-8;

double gap(const analytic::ClosedFormResult &exact, const ChargingResult &numeric) {
  return std::max({std::abs(exact.tau - numeric.tau), std::abs(exact.delta_e_tau - numeric.delta_e_tau),
                   std::abs(exact.entropy_tau - numeric.entropy_tau)});
}

} // namespace

SelfcheckReport run_selfcheck(const SelfcheckOptions &options) {
  SelfcheckReport report;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> time_dist(0.0, 20.0);

  for (double delta : options.deltas) {
    for (int total = 2; total <= options.max_spins; ++total) {
      for (int nb = 1; nb < total; ++nb) {
        BatteryConfig config;
        config.n_b = nb;
        config.n_c = total - nb;
        config.delta = delta;

        std::vector<double> times{0.0};
        for (int i = 0; i < options.times_per_config; ++i)
          times.push_back(time_dist(rng));

        const oracle::ClosureReport closure = oracle::verify_subspace_closure(config, times);
        double population_gap = closure.max_population_gap;
        if (options.inject_fault)
          population_gap += 1e-6;
        report.max_population_gap = std::max(report.max_population_gap, population_gap);
        report.max_leakage = std::max(report.max_leakage, closure.max_leakage);
        report.max_off_diagonal = std::max(report.max_off_diagonal, closure.max_off_diagonal);
        ++report.configs;
      }
    }
  }

  for (int n = 1; n <= 20; ++n) {
    const ChargingResult r = find_optimal_tau({.n_b = 1, .n_c = n});
    report.max_analytic_gap = std::max(report.max_analytic_gap, gap(analytic::single_battery(n, 1.0, 1.0), r));
  }
  for (int n = 2; n <= 50; ++n) {
    const ChargingResult rb = find_optimal_tau({.n_b = 2, .n_c = n});
    report.max_analytic_gap = std::max(report.max_analytic_gap, gap(analytic::two_battery(n, 1.0, 1.0), rb));
    const ChargingResult rc = find_optimal_tau({.n_b = n, .n_c = 2});
    report.max_analytic_gap = std::max(report.max_analytic_gap, gap(analytic::two_charger(n, 1.0, 1.0), rc));
  }

  report.passed = report.max_population_gap < kPopulationTol && report.max_leakage < kClosureTol &&
                  report.max_off_diagonal < kClosureTol && report.max_analytic_gap < kAnalyticTol;
  return report;
}

} // namespace csb::cli
