#include "csb/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "csb/errors.hpp"

namespace csb {
namespace {

// Grid points per period of the fastest frequency present in the populations.
constexpr double kSamplesPerPeriod = 16.0;
constexpr int kScanBlock = 512;
constexpr int kMaxHorizonDoublings = 4;
// Candidate peaks refined by the window rule.
constexpr std::size_t kMaxWindowCandidates = 64;

struct Peak {
  double t = 0.0;
  double value = 0.0;
};

// Maximises f(t) = <k>(t) inside [lo, hi] around the grid peak (mid, f_mid).
// The root of df/dt is bracketed and solved with TOMS 748; golden-section search
// on f is the fallback when the derivative does not change sign in the bracket.
Peak refine_peak(const Propagator &prop, double lo, double mid, double hi, double f_mid,
                 double rel_tol) {
  auto rate = [&](double t) { return prop.mean_excitation_rate(t); };
  auto tolerance = [&](double a, double b) {
    return std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b));
  };

  Peak best{mid, f_mid};
  auto consider = [&](double t) {
    const double v = prop.mean_excitation(t);
    if (v > best.value)
      best = {t, v};
  };

  const double g_mid = rate(mid);
  double a = mid, b = hi;
  if (g_mid < 0.0) {
    a = lo;
    b = mid;
  }
  const double ga = (a == mid) ? g_mid : rate(a);
  const double gb = (b == mid) ? g_mid : rate(b);

  if (ga == 0.0) {
    consider(a);
    return best;
  }
  if (gb == 0.0) {
    consider(b);
    return best;
  }
  if (ga > 0.0 && gb < 0.0) {
    std::uintmax_t iterations = 200;
    const auto root = boost::math::tools::toms748_solve(rate, a, b, ga, gb, tolerance, iterations);
    const double fa = prop.mean_excitation(root.first);
    const double fb = prop.mean_excitation(root.second);
    consider(fa >= fb ? root.first : root.second);
    return best;
  }

  // Golden-section search on f over the full bracket.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x0 = lo, x3 = hi;
  double x1 = x3 - inv_phi * (x3 - x0);
  double x2 = x0 + inv_phi * (x3 - x0);
  double f1 = prop.mean_excitation(x1);
  double f2 = prop.mean_excitation(x2);
  for (int it = 0; it < 200 && !tolerance(x0, x3); ++it) {
    if (f1 >= f2) {
      x3 = x2;
      x2 = x1;
      f2 = f1;
      x1 = x3 - inv_phi * (x3 - x0);
      f1 = prop.mean_excitation(x1);
    } else {
      x0 = x1;
      x1 = x2;
      f1 = f2;
      x2 = x0 + inv_phi * (x3 - x0);
      f2 = prop.mean_excitation(x2);
    }
  }
  consider(f1 >= f2 ? x1 : x2);
  return best;
}

double grid_step(const Propagator &prop, double horizon, int coarse_samples) {
  const double bandwidth = prop.bandwidth();
  double dt = horizon / coarse_samples;
  if (bandwidth > 0.0)
    dt = std::min(dt, 2.0 * std::numbers::pi / (kSamplesPerPeriod * bandwidth));
  return dt;
}

double noise_floor(const Propagator &prop) { return 1e-12 * std::max(1, prop.dim()); }

// Earliest local maximum: the running maximum followed by a drop beyond noise.
// Returns (peak, coarse value) or extends the horizon when none is found.
Peak first_peak(const Propagator &prop, double &horizon, const SearchPolicy &policy,
                double &coarse_value) {
  const double noise = noise_floor(prop);
  for (int attempt = 0; attempt <= kMaxHorizonDoublings; ++attempt) {
    const double dt = grid_step(prop, horizon, policy.coarse_samples);
    const auto total = static_cast<std::int64_t>(std::ceil(horizon / dt));

    double best_t = 0.0, best_f = 0.0, prev_t = 0.0;
    double before_best = 0.0;
    bool rising = false;
    std::vector<double> times;
    for (std::int64_t start = 1; start <= total; start += kScanBlock) {
      const std::int64_t stop = std::min<std::int64_t>(total, start + kScanBlock - 1);
      times.clear();
      for (std::int64_t i = start; i <= stop; ++i)
        times.push_back(std::min(horizon, static_cast<double>(i) * dt));
      const std::vector<double> f = prop.mean_excitations(times);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] > best_f) {
          before_best = prev_t;
          best_t = times[i];
          best_f = f[i];
          rising = rising || best_f > noise;
        } else if (rising && f[i] < best_f - noise) {
          coarse_value = best_f;
          return refine_peak(prop, before_best, best_t, times[i], best_f, policy.refine_tol);
        }
        prev_t = times[i];
      }
    }
    if (!rising)
      throw std::logic_error("transported energy vanishes on the whole search window");
    horizon *= 2.0;
  }
  throw NumericError("no charging peak found within the search window");
}

Peak window_maximum(const Propagator &prop, double horizon, const SearchPolicy &policy,
                    double &coarse_value) {
  const double dt = grid_step(prop, horizon, policy.coarse_samples);
  const auto intervals = static_cast<std::int64_t>(std::ceil(horizon / dt));
  std::vector<double> times(static_cast<std::size_t>(intervals + 1));
  for (std::int64_t i = 0; i <= intervals; ++i)
    times[static_cast<std::size_t>(i)] = horizon * static_cast<double>(i) / intervals;
  const std::vector<double> f = prop.mean_excitations(times);

  const double best = *std::max_element(f.begin(), f.end());
  if (best <= noise_floor(prop))
    throw std::logic_error("transported energy vanishes on the whole search window");
  coarse_value = best;

  // Grid maxima near the top; sampling offsets can reorder recurrent peaks, so
  // each candidate is refined before choosing the earliest global maximum.
  struct Candidate {
    std::size_t index;
    double value;
  };
  std::vector<Candidate> candidates;
  const double slack = 0.05 * best;
  const std::size_t last = f.size() - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    const bool left = f[i] > f[i - 1];
    const bool right = i == last || f[i] >= f[i + 1];
    if (left && right && f[i] >= best - slack)
      candidates.push_back({i, f[i]});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate &a, const Candidate &b) { return a.value > b.value; });
  if (candidates.size() > kMaxWindowCandidates)
    candidates.resize(kMaxWindowCandidates);

  std::vector<Peak> peaks;
  for (const Candidate &c : candidates) {
    const double hi = c.index == last ? times[last] : times[c.index + 1];
    peaks.push_back(refine_peak(prop, times[c.index - 1], times[c.index], hi, c.value,
                                policy.refine_tol));
  }
  double top = 0.0;
  for (const Peak &p : peaks)
    top = std::max(top, p.value);
  const double tie = 1e-12 * std::max(1.0, top);
  Peak chosen{horizon, -1.0};
  for (const Peak &p : peaks)
    if (p.value >= top - tie && (chosen.value < 0.0 || p.t < chosen.t))
      chosen = p;
  return chosen;
}

} // namespace

const char *to_string(TauRule rule) {
  return rule == TauRule::FirstPeak ? "first-peak" : "window";
}

TauRule parse_tau_rule(const std::string &text) {
  if (text == "first-peak")
    return TauRule::FirstPeak;
  if (text == "window")
    return TauRule::WindowMaximum;
  throw DomainError("unknown tau rule '" + text + "' (expected first-peak or window)");
}

void validate(const SearchPolicy &policy) {
  if (policy.t_max && !(*policy.t_max > 0.0 && std::isfinite(*policy.t_max)))
    throw DomainError("t_max must be positive");
  if (policy.coarse_samples < 64)
    throw DomainError("coarse_samples must be at least 64");
  if (!(policy.refine_tol > 0.0 && policy.refine_tol <= 1e-4))
    throw DomainError("refine_tol must lie in (0, 1e-4]");
}

double default_search_window(const EigenDecomposition &decomp, double lambda) {
  const double cap = 1e4 / std::abs(lambda);
  const Eigen::Index n = decomp.eigenvalues.size();
  if (n < 2)
    return cap;
  const double range = decomp.eigenvalues(n - 1) - decomp.eigenvalues(0);
  double gap_min = 0.0;
  for (Eigen::Index m = 1; m < n; ++m) {
    const double gap = decomp.eigenvalues(m) - decomp.eigenvalues(m - 1);
    if (gap > 1e-12 * range && (gap_min == 0.0 || gap < gap_min))
      gap_min = gap;
  }
  if (gap_min == 0.0)
    return cap;
  return std::min(8.0 * std::numbers::pi / gap_min, cap);
}

ChargingResult find_optimal_tau(const BatteryConfig &config, const SearchPolicy &search) {
  validate(config);
  validate(search);

  const EigenDecomposition decomp = decompose(build_hamiltonian(config));
  const Propagator prop(decomp);
  double horizon = search.t_max ? *search.t_max : default_search_window(decomp, config.lambda);

  double coarse = 0.0;
  const Peak peak = search.rule == TauRule::FirstPeak ? first_peak(prop, horizon, search, coarse)
                                                      : window_maximum(prop, horizon, search, coarse);

  PopulationState p = prop.populations(peak.t);
  ChargingResult r;
  r.n_b = config.n_b;
  r.n_c = config.n_c;
  r.tau = peak.t;
  r.delta_e_tau = transported_energy(p, config);
  r.delta_e_per_cell = r.delta_e_tau / config.n_b;
  r.entropy_tau = entanglement_entropy(p);
  r.entropy_per_cell = r.entropy_tau / config.n_b;
  r.power = r.delta_e_tau / r.tau;
  r.search_window = horizon;
  r.coarse_delta_e = config.omega_b * coarse;
  return r;
}

} // namespace csb
