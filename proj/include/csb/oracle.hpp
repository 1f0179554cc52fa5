#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "csb/dynamics.hpp"
#include "csb/subspace.hpp"

namespace csb::oracle {

// Memory guard: 2^12 = 4096 dimensional dense problems at most.
inline constexpr int kMaxSpins = 12;

// Computational basis layout: bit i (i < n_b) is battery spin i, bit n_b + j is
// charger spin j; a set bit means spin up.
struct FullStateVector {
  int n_b = 0;
  int n_c = 0;
  Eigen::VectorXcd amplitudes;

  double norm_squared() const { return amplitudes.squaredNorm(); }
};

// H_b + H_c + H_I as a dense real symmetric 2^N x 2^N matrix. Symmetric exactly:
// every flip-flop element is written to both (i, j) and (j, i).
Eigen::MatrixXd full_hamiltonian(const BatteryConfig &config);

// Index of |0>_b |all up>_c.
std::size_t initial_index(const BatteryConfig &config);

// Exact propagator on the full space via dense Hermitian eigendecomposition.
class FullSpaceSystem {
public:
  explicit FullSpaceSystem(const BatteryConfig &config);

  const BatteryConfig &config() const { return config_; }
  FullStateVector state_at(double t) const;

  // Weight of all computational states with k battery spins up, k = 0..d.
  PopulationState populations_at(double t) const;

private:
  BatteryConfig config_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd weights_;
};

PopulationState brute_force_populations(const BatteryConfig &config, double t);

// Projection of a full state onto the Dicke product basis |k>_b |n - k>_c.
std::vector<std::complex<double>> subspace_amplitudes(const FullStateVector &psi);

// Battery reduced density matrix projected on the battery Dicke states |k>, k = 0..N_b.
Eigen::MatrixXcd battery_dicke_density(const FullStateVector &psi);

struct ClosureReport {
  double max_leakage = 0.0;        // 1 - sum_k |<k, n-k|psi(t)>|^2
  double max_off_diagonal = 0.0;   // max |<k|rho_b|k'>|, k != k'
  double max_population_gap = 0.0; // brute force vs subspace populations
  bool passed(double tol = 1e-12) const {
    return max_leakage < tol && max_off_diagonal < tol;
  }
};

ClosureReport verify_subspace_closure(const BatteryConfig &config, std::span<const double> t_grid);

} // namespace csb::oracle
