#pragma once

#include <optional>

#include "csb/dynamics.hpp"
#include "csb/subspace.hpp"

namespace csb {

// How the optimal charging time is chosen from Delta E(t).
enum class TauRule {
  // Earliest local maximum of Delta E(t): the end of the first charging stroke.
  FirstPeak,
  // Earliest global maximum of Delta E(t) on [0, t_max].
  WindowMaximum,
};

const char *to_string(TauRule rule);
TauRule parse_tau_rule(const std::string &text);

struct SearchPolicy {
  TauRule rule = TauRule::FirstPeak;
  // Search horizon. Unset: 8 pi / (smallest nonzero eigenvalue gap), capped at 1e4 / |lambda|.
  std::optional<double> t_max;
  int coarse_samples = 4096;
  double refine_tol = 1e-10;
};

void validate(const SearchPolicy &policy);

struct ChargingResult {
  int n_b = 0;
  int n_c = 0;
  double tau = 0.0;
  double delta_e_tau = 0.0;
  double delta_e_per_cell = 0.0;
  double entropy_tau = 0.0;
  double entropy_per_cell = 0.0;
  double power = 0.0;
  // Horizon actually searched (may exceed the requested one after extension).
  double search_window = 0.0;
  // Best value on the coarse grid before refinement.
  double coarse_delta_e = 0.0;
};

// Default horizon for a decomposed Hamiltonian.
double default_search_window(const EigenDecomposition &decomp, double lambda);

ChargingResult find_optimal_tau(const BatteryConfig &config, const SearchPolicy &search = {});

} // namespace csb
