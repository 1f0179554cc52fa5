// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "csb/analytic.hpp"
#include "csb/dynamics.hpp"
#include "csb/optimizer.hpp"
#include "csb/oracle.hpp"
#include "csb/sweep.hpp"

using namespace csb;
using std::numbers::pi;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string &what) {
    if (!cond) {
      if (ok)
        detail = what;
      ok = false;
    }
  }
};

std::string fmt(const char *pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1
Verdict individual_charging() {
  Verdict v;
  double worst = 0.0;
  for (int nc : {1, 4, 9, 100}) {
    const ChargingResult r = find_optimal_tau({.n_b = 1, .n_c = nc});
    const double tau = pi / (2.0 * std::sqrt(nc));
    worst = std::max({worst, std::abs(r.tau - tau), std::abs(r.delta_e_tau - 1.0)});
    v.require(std::abs(r.tau - tau) < 1e-8, fmt("tau off at n_c = %g", nc));
    v.require(std::abs(r.delta_e_tau - 1.0) < 1e-8, fmt("delta_e off at n_c = %g", nc));
  }
  if (v.ok)
    v.detail = fmt("max error %.3g", worst);
  return v;
}

// 2 and 3
Verdict two_spin_family(bool batteries) {
  Verdict v;
  double worst = 0.0;
  for (int n = 2; n <= 200; ++n) {
    const BatteryConfig c = batteries ? BatteryConfig{.n_b = 2, .n_c = n} : BatteryConfig{.n_b = n, .n_c = 2};
    const ChargingResult r = find_optimal_tau(c);
    const double nn = n;
    const double energy = 16.0 * nn * (nn - 1.0) / ((3.0 * nn - 2.0) * (3.0 * nn - 2.0));
    const double x = (nn - 2.0) / (3.0 * nn - 2.0);
    const double entropy = analytic::binary_entropy(x * x);
    const double err = std::max(std::abs(r.delta_e_tau - energy), std::abs(r.entropy_tau - entropy));
    worst = std::max(worst, err);
    v.require(err < 1e-8, fmt("closed form missed at n = %g (error %.3g)", n, err));
  }
  const BatteryConfig big = batteries ? BatteryConfig{.n_b = 2, .n_c = 100000} : BatteryConfig{.n_b = 100000, .n_c = 2};
  const double far = find_optimal_tau(big).delta_e_tau;
  v.require(std::abs(far - 16.0 / 9.0) < 1e-3, fmt("asymptote %.10g", far));
  if (v.ok)
    v.detail = fmt("max error %.3g, n = 1e5 gives %.10g", worst, far);
  return v;
}

// 4
Verdict full_charge() {
  Verdict v;
  const ChargingResult r = find_optimal_tau({.n_b = 2, .n_c = 2});
  v.require(std::abs(r.delta_e_tau - 2.0) < 1e-10, fmt("delta_e %.15g", r.delta_e_tau));
  v.require(std::abs(r.entropy_tau) < 1e-10, fmt("entropy %.3g", r.entropy_tau));
  if (v.ok)
    v.detail = fmt("delta_e %.15g, entropy %.3g", r.delta_e_tau, r.entropy_tau);
  return v;
}

// 5
Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> time(0.0, 20.0);
  struct Variant {
    double omega_b, omega_c, delta;
  };
  const Variant variants[] = {{1.0, 1.0, 0.0}, {1.0, 1.0, 0.5}, {1.0, 1.35, 0.0}, {0.8, 1.2, 0.5}};
  double gap = 0.0, leak = 0.0;
  int configs = 0;
  for (int nb = 1; nb <= 9; ++nb)
    for (int nc = 1; nb + nc <= 10; ++nc)
      for (const Variant &var : variants) {
        const BatteryConfig c{.n_b = nb, .n_c = nc, .omega_b = var.omega_b, .omega_c = var.omega_c,
                              .lambda = 1.0, .delta = var.delta};
        std::vector<double> times(20);
        for (double &t : times)
          t = time(rng);
        const oracle::ClosureReport r = oracle::verify_subspace_closure(c, times);
        gap = std::max(gap, r.max_population_gap);
        leak = std::max(leak, r.max_leakage);
        ++configs;
        v.require(r.max_population_gap < 1e-10,
                  fmt("population gap %.3g at (%g, %g)", r.max_population_gap, nb, nc));
        v.require(r.max_leakage < 1e-12, fmt("leakage %.3g at (%g, %g)", r.max_leakage, nb, nc));
      }
  if (v.ok)
    v.detail = fmt("%g configs, max population gap %.3g, max leakage %.3g", configs, gap, leak);
  return v;
}

// 6
Verdict resonance() {
  Verdict v;
  std::string detail;
  for (int nb : {4, 10, 20}) {
    int arg = 0;
    double best = -1.0, at_resonance = 0.0;
    for (int nc = 1; nc <= 3 * nb; ++nc) {
      const double e = find_optimal_tau({.n_b = nb, .n_c = nc}).delta_e_per_cell;
      if (nc == nb)
        at_resonance = e;
      if (e > best) {
        best = e;
        arg = nc;
      }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%sn_b=%d: argmax n_c=%d (%.9f vs %.9f at n_c=n_b)",
                  detail.empty() ? "" : "; ", nb, arg, best, at_resonance);
    detail += buf;
    v.ok = v.ok && arg == nb;
  }
  v.detail = detail;
  return v;
}

// 7
Verdict diagonal_shape() {
  // Frozen after the first verified run; values up to n = 5 agree with a
  // brute-force scan on the full space.
  constexpr double kAtSeven = 0.955036095025;
  constexpr double kAt200 = 0.993701620096;
  Verdict v;
  SweepSpec spec{.mode = SweepMode::Diagonal};
  for (int n = 2; n <= 200; ++n)
    spec.n_b_values.push_back(n);
  const SweepResult r = run_sweep(spec, 1);
  std::vector<double> e;
  for (const SweepRow &row : r.rows) {
    v.require(row.ok(), "point failed: " + row.status);
    e.push_back(row.ok() ? row.result->delta_e_per_cell : 0.0);
  }
  if (!v.ok)
    return v;
  std::size_t arg = 0;
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] < e[arg])
      arg = i;
  const int n_min = static_cast<int>(arg) + 2;
  const double e2 = e.front(), e7 = e[5], e200 = e.back();
  v.require(std::abs(e2 - 1.0) < 1e-10, fmt("value at 2 is %.12g", e2));
  v.require(n_min >= 6 && n_min <= 8, fmt("minimum at n = %g", n_min));
  v.require(e200 > e7, "value at 200 not above value at 7");
  v.require(std::abs(1.0 - e200) < 0.05, fmt("value at 200 is %.12g", e200));
  v.require(std::abs(e7 - kAtSeven) < 1e-9, fmt("golden at 7 drifted: %.12g", e7));
  v.require(std::abs(e200 - kAt200) < 1e-9, fmt("golden at 200 drifted: %.12g", e200));
  if (v.ok)
    v.detail = fmt("minimum at n = %g (%.12g), n = 200 gives %.12g", n_min, e[arg], e200);
  return v;
}

// 8
Verdict uniformity() {
  Verdict v;
  SweepSpec spec{.mode = SweepMode::RatioScan, .n_b_values = {100, 150, 200}};
  for (int i = 0; i <= 125; ++i)
    spec.ratios.push_back(0.5 + 0.02 * i);
  const SweepResult r = run_sweep(spec, 1);
  for (const SweepRow &row : r.rows)
    v.require(row.ok(), "point failed: " + row.status);
  if (!v.ok)
    return v;
  const UniformityReport u = uniformity_report(r, 0.02);
  double worst_ratio = 0.0;
  for (const RatioDeviation &d : u.points)
    if (d.max_deviation == u.max_deviation)
      worst_ratio = d.ratio;
  v.require(u.max_deviation < 0.02, fmt("%g ratios above 0.02", u.flagged_count()));
  v.detail = fmt("max deviation %.6g at ratio %.2f over %g ratios", u.max_deviation, worst_ratio,
                 u.points.size());
  return v;
}

// 9
Verdict conservation() {
  Verdict v;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(1, 80);
  std::uniform_real_distribution<double> omega(0.2, 3.0), lambda(0.1, 2.0), delta(-1.0, 1.0), time(0.0, 30.0);
  double norm_err = 0.0, energy_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double w = omega(rng);
    const BatteryConfig c{.n_b = size(rng), .n_c = size(rng), .omega_b = w, .omega_c = w,
                          .lambda = lambda(rng), .delta = delta(rng)};
    const EigenDecomposition d = decompose(build_hamiltonian(c));
    const double e0 = bare_energy(populations_at(d, 0.0), c);
    for (int s = 0; s < 100; ++s) {
      const PopulationState p = populations_at(d, time(rng));
      double sum = 0.0;
      for (double x : p.probs)
        sum += x;
      norm_err = std::max(norm_err, std::abs(sum - 1.0));
      energy_err = std::max(energy_err, std::abs(bare_energy(p, c) - e0));
    }
  }
  v.require(norm_err < 1e-10, fmt("norm error %.3g", norm_err));
  v.require(energy_err < 1e-10, fmt("energy drift %.3g", energy_err));
  if (v.ok)
    v.detail = fmt("norm error %.3g, energy drift %.3g", norm_err, energy_err);
  return v;
}

// 10
Verdict scale() {
  Verdict v;
  const BatteryConfig c{.n_b = 2000, .n_c = 2000};
  const auto t0 = std::chrono::steady_clock::now();
  const ChargingResult r = find_optimal_tau(c);
  const double elapsed = seconds_since(t0);
  const PopulationState p = populations_at(decompose(build_hamiltonian(c)), r.tau);
  double sum = 0.0;
  for (double x : p.probs)
    sum += x;
  v.require(elapsed < 60.0, fmt("took %.1f s", elapsed));
  v.require(std::abs(sum - 1.0) < 1e-8, fmt("sum of probabilities %.15g", sum));
  v.detail = fmt("decomposition + search %.1f s, |sum p - 1| = %.3g, delta_e/n_b = %.9g", elapsed,
                 std::abs(sum - 1.0), r.delta_e_per_cell);
  return v;
}

struct Criterion {
  int id;
  const char *name;
  double budget;
  std::function<Verdict()> run;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "individual charging", 1.0, individual_charging},
      {2, "two-battery closed forms", 10.0, [] { return two_spin_family(true); }},
      {3, "two-charger closed forms", 10.0, [] { return two_spin_family(false); }},
      {4, "full charge at n_b = n_c = 2", 1.0, full_charge},
      {5, "brute-force equivalence", 120.0, oracle_equivalence},
      {6, "resonance n_c = n_b maximizes energy", 60.0, resonance},
      {7, "diagonal curve shape", 30.0, diagonal_shape},
      {8, "ratio uniformity", 300.0, uniformity},
      {9, "conservation", 60.0, conservation},
      {10, "scale n_b = n_c = 2000", 60.0, scale},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception &e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = seconds_since(t0);
    if (elapsed > c.budget) {
      v.ok = false;
      v.detail += fmt(" [over budget %.0f s]", c.budget);
    }
    std::printf("%s  %2d  %-38s %7.2f s  %s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, elapsed,
                v.detail.c_str());
    std::fflush(stdout);
    failed += v.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
