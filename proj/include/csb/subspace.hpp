#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace csb {

// Physical parameters of one central-spin battery instance (hbar = 1).
// Battery: n_b spins with splitting omega_b. Charger: n_c spins with omega_c.
// H_I = lambda (S+ J- + S- J+) + 2 delta Sz Jz.
struct BatteryConfig {
  int n_b = 1;
  int n_c = 1;
  double omega_b = 1.0;
  double omega_c = 1.0;
  double lambda = 1.0;
  double delta = 0.0;
};

// Throws DomainError unless n_b >= 1, n_c >= 1, lambda != 0 and all reals finite.
void validate(const BatteryConfig &config);

// The excitation-conserving sector reached from |0>_b |n_c>_c.
// Basis index k labels the Dicke product state |k>_b |n - k>_c, k = 0..d.
struct SubspaceBasis {
  int d = 0;
  int n = 0;
  int dim = 1;

  static SubspaceBasis of(const BatteryConfig &config);

  int battery_excitations(int k) const { return k; }
  int charger_excitations(int k) const { return n - k; }
};

// Real symmetric tridiagonal matrix stored as two flat arrays.
// offdiag[j - 1] couples basis states j - 1 and j.
struct TridiagonalHamiltonian {
  std::vector<double> diag;
  std::vector<double> offdiag;

  int dim() const { return static_cast<int>(diag.size()); }

  // Debug export.
  Eigen::MatrixXd dense() const;
};

TridiagonalHamiltonian build_hamiltonian(const BatteryConfig &config);

// Writes the dense (d+1)x(d+1) matrix as CSV, one row per line.
void write_dense_csv(const TridiagonalHamiltonian &h, std::ostream &out);

} // namespace csb
