#include "csb/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "csb/errors.hpp"

namespace csb::oracle {
namespace {

void guard(const BatteryConfig &config) {
  validate(config);
  if (config.n_b + config.n_c > kMaxSpins)
    throw DomainError("brute force limited to n_b + n_c <= " + std::to_string(kMaxSpins));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

struct Layout {
  int n_b;
  int n_c;
  std::uint64_t battery_mask() const { return (std::uint64_t{1} << n_b) - 1; }
  int battery_ups(std::uint64_t s) const { return std::popcount(s & battery_mask()); }
  int charger_ups(std::uint64_t s) const { return std::popcount(s >> n_b); }
};

} // namespace

Eigen::MatrixXd full_hamiltonian(const BatteryConfig &config) {
  guard(config);
  const int n = config.n_b + config.n_c;
  const std::uint64_t dim = std::uint64_t{1} << n;
  const Layout layout{config.n_b, config.n_c};
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));

  for (std::uint64_t s = 0; s < dim; ++s) {
    const double sz = layout.battery_ups(s) - 0.5 * config.n_b;
    const double jz = layout.charger_ups(s) - 0.5 * config.n_c;
    const auto i = static_cast<Eigen::Index>(s);
    h(i, i) = config.omega_b * sz + config.omega_c * jz + 2.0 * config.delta * sz * jz;

    // S+ J-: raise a battery spin, lower a charger spin. The Hermitian
    // conjugate term is the transpose.
    for (int b = 0; b < config.n_b; ++b) {
      if (s & (std::uint64_t{1} << b))
        continue;
      for (int c = 0; c < config.n_c; ++c) {
        const std::uint64_t cbit = std::uint64_t{1} << (config.n_b + c);
        if (!(s & cbit))
          continue;
        const auto j = static_cast<Eigen::Index>((s | (std::uint64_t{1} << b)) & ~cbit);
        h(j, i) = config.lambda;
        h(i, j) = config.lambda;
      }
    }
  }
  return h;
}

std::size_t initial_index(const BatteryConfig &config) {
  return ((std::size_t{1} << config.n_c) - 1) << config.n_b;
}

FullSpaceSystem::FullSpaceSystem(const BatteryConfig &config) : config_(config) {
  guard(config);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full_hamiltonian(config));
  if (solver.info() != Eigen::Success)
    throw NumericError("dense eigensolver failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
  weights_ = vectors_.row(static_cast<Eigen::Index>(initial_index(config))).transpose();
}

FullStateVector FullSpaceSystem::state_at(double t) const {
  if (!(t >= 0.0))
    throw DomainError("time must be non-negative");
  const Eigen::ArrayXd phase = energies_.array() * t;
  const Eigen::VectorXd a = (weights_.array() * phase.cos()).matrix();
  const Eigen::VectorXd b = (weights_.array() * phase.sin()).matrix();
  FullStateVector psi;
  psi.n_b = config_.n_b;
  psi.n_c = config_.n_c;
  const Eigen::VectorXd re = vectors_ * a;
  const Eigen::VectorXd im = -(vectors_ * b);
  psi.amplitudes.resize(re.size());
  psi.amplitudes.real() = re;
  psi.amplitudes.imag() = im;
  return psi;
}

PopulationState FullSpaceSystem::populations_at(double t) const {
  const FullStateVector psi = state_at(t);
  const Layout layout{config_.n_b, config_.n_c};
  const int d = std::min(config_.n_b, config_.n_c);
  PopulationState p;
  p.t = t;
  p.probs.assign(d + 1, 0.0);
  for (Eigen::Index s = 0; s < psi.amplitudes.size(); ++s) {
    const int k = layout.battery_ups(static_cast<std::uint64_t>(s));
    const double w = std::norm(psi.amplitudes(s));
    // Weight outside 0..d would be leakage; it is reported by verify_subspace_closure.
    if (k <= d)
      p.probs[k] += w;
  }
  return p;
}

PopulationState brute_force_populations(const BatteryConfig &config, double t) {
  return FullSpaceSystem(config).populations_at(t);
}

std::vector<std::complex<double>> subspace_amplitudes(const FullStateVector &psi) {
  const Layout layout{psi.n_b, psi.n_c};
  const int d = std::min(psi.n_b, psi.n_c);
  const int n = psi.n_c;
  std::vector<std::complex<double>> out(d + 1);
  for (Eigen::Index s = 0; s < psi.amplitudes.size(); ++s) {
    const int k = layout.battery_ups(static_cast<std::uint64_t>(s));
    if (k <= d && layout.charger_ups(static_cast<std::uint64_t>(s)) == n - k)
      out[k] += psi.amplitudes(s);
  }
  for (int k = 0; k <= d; ++k)
    out[k] /= std::sqrt(binomial(psi.n_b, k) * binomial(psi.n_c, n - k));
  return out;
}

Eigen::MatrixXcd battery_dicke_density(const FullStateVector &psi) {
  const int nb = psi.n_b;
  const std::size_t bdim = std::size_t{1} << nb;
  const std::size_t cdim = std::size_t{1} << psi.n_c;

  // Psi as a (battery x charger) matrix; rho_b = Psi Psi^dagger.
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(bdim), static_cast<Eigen::Index>(cdim));
  for (std::size_t c = 0; c < cdim; ++c)
    for (std::size_t b = 0; b < bdim; ++b)
      m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) =
          psi.amplitudes(static_cast<Eigen::Index>((c << nb) | b));
  const Eigen::MatrixXcd rho = m * m.adjoint();

  // Columns of dicke are normalised battery Dicke states |k>.
  Eigen::MatrixXd dicke = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bdim), nb + 1);
  for (std::size_t b = 0; b < bdim; ++b) {
    const int k = std::popcount(b);
    dicke(static_cast<Eigen::Index>(b), k) = 1.0 / std::sqrt(binomial(nb, k));
  }
  const Eigen::MatrixXcd dc = dicke.cast<std::complex<double>>();
  return dc.adjoint() * rho * dc;
}

ClosureReport verify_subspace_closure(const BatteryConfig &config, std::span<const double> t_grid) {
  const FullSpaceSystem full(config);
  const Propagator sub(decompose(build_hamiltonian(config)));

  ClosureReport report;
  for (double t : t_grid) {
    const FullStateVector psi = full.state_at(t);
    double inside = 0.0;
    for (const auto &a : subspace_amplitudes(psi))
      inside += std::norm(a);
    report.max_leakage = std::max(report.max_leakage, std::abs(psi.norm_squared() - inside));

    const Eigen::MatrixXcd rho = battery_dicke_density(psi);
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
      for (Eigen::Index j = 0; j < rho.cols(); ++j)
        if (i != j)
          report.max_off_diagonal = std::max(report.max_off_diagonal, std::abs(rho(i, j)));

    const PopulationState pf = full.populations_at(t);
    const PopulationState ps = sub.populations(t);
    for (std::size_t k = 0; k < ps.probs.size(); ++k)
      report.max_population_gap =
          std::max(report.max_population_gap, std::abs(pf.probs[k] - ps.probs[k]));
  }
  return report;
}

} // namespace csb::oracle
