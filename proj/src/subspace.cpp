#include "csb/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "csb/errors.hpp"
#include "csb/output.hpp"

namespace csb {

void validate(const BatteryConfig &config) {
  if (config.n_b < 1)
    throw DomainError("n_b must be ≥ 1");
  if (config.n_c < 1)
    throw DomainError("n_c must be ≥ 1");
  if (!std::isfinite(config.omega_b) || !std::isfinite(config.omega_c) ||
      !std::isfinite(config.lambda) || !std::isfinite(config.delta))
    throw DomainError("parameters must be finite");
  if (config.lambda == 0.0)
    throw DomainError("lambda must be nonzero");
}

SubspaceBasis SubspaceBasis::of(const BatteryConfig &config) {
  validate(config);
  SubspaceBasis basis;
  basis.d = std::min(config.n_b, config.n_c);
  basis.n = config.n_c;
  basis.dim = basis.d + 1;
  return basis;
}

TridiagonalHamiltonian build_hamiltonian(const BatteryConfig &config) {
  const SubspaceBasis basis = SubspaceBasis::of(config);
  const double nb = config.n_b;
  const double nc = config.n_c;

  TridiagonalHamiltonian h;
  h.diag.resize(basis.dim);
  h.offdiag.resize(basis.d);

  // <k| omega_b Sz + omega_c Jz + 2 delta Sz Jz |k> with Sz = k - N_b/2 and
  // Jz = (n - k) - N_c/2 on the Dicke product state.
  for (int k = 0; k <= basis.d; ++k) {
    const double sz = k - 0.5 * nb;
    const double jz = basis.charger_excitations(k) - 0.5 * nc;
    h.diag[k] = config.omega_b * sz + config.omega_c * jz + 2.0 * config.delta * sz * jz;
  }
  // u_j = j lambda sqrt((N_b - j + 1)(N_c - j + 1)).
  for (int j = 1; j <= basis.d; ++j) {
    h.offdiag[j - 1] = j * config.lambda * std::sqrt((nb - j + 1.0) * (nc - j + 1.0));
  }
  return h;
}

Eigen::MatrixXd TridiagonalHamiltonian::dense() const {
  const int n = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = diag[i];
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = offdiag[i];
    m(i + 1, i) = offdiag[i];
  }
  return m;
}

void write_dense_csv(const TridiagonalHamiltonian &h, std::ostream &out) {
  const Eigen::MatrixXd m = h.dense();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j)
        out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

} // namespace csb
