#include "csb/analytic.hpp"

#include <cmath>
#include <numbers>

#include "csb/errors.hpp"

namespace csb::analytic {
namespace {

void require_lambda(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw DomainError("lambda must be nonzero");
}

// Shared three-level closed forms: n is the larger register (N_c for the
// two-battery family, N_b for the two-charger family).
ClosedFormResult three_level(int n, double omega, double lambda, Family family) {
  require_lambda(lambda);
  const double nn = n;
  const double denom = 3.0 * nn - 2.0;
  const double x = (nn - 2.0) / denom;
  ClosedFormResult r;
  r.family = family;
  r.tau = std::numbers::pi / three_level_frequency(n, lambda);
  r.delta_e_tau = 16.0 * omega * nn * (nn - 1.0) / (denom * denom);
  r.entropy_tau = binary_entropy(x * x);
  return r;
}

double three_level_energy(int n, double omega, double lambda, double t) {
  const double nn = n;
  const double denom = 3.0 * nn - 2.0;
  const double c = std::cos(three_level_frequency(n, lambda) * t);
  return omega / (denom * denom) *
         (nn * (nn - 2.0) * c * c - 8.0 * nn * (nn - 1.0) * c + nn * (7.0 * nn - 6.0));
}

} // namespace

const char *to_string(Family family) {
  switch (family) {
  case Family::SingleBattery:
    return "single_battery";
  case Family::TwoBattery:
    return "two_battery";
  case Family::TwoCharger:
    return "two_charger";
  }
  return "unknown";
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0)
    throw DomainError("binary entropy argument outside [0, 1]");
  double h = 0.0;
  if (x > 0.0)
    h -= x * std::log2(x);
  if (x < 1.0)
    h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double three_level_frequency(int n, double lambda) {
  return std::abs(lambda) * std::sqrt(2.0 * (3.0 * n - 2.0));
}

ClosedFormResult single_battery(int n_c, double omega, double lambda) {
  if (n_c < 1)
    throw DomainError("n_c must be ≥ 1");
  require_lambda(lambda);
  ClosedFormResult r;
  r.family = Family::SingleBattery;
  r.tau = std::numbers::pi / (2.0 * std::abs(lambda) * std::sqrt(static_cast<double>(n_c)));
  r.delta_e_tau = omega;
  r.entropy_tau = 0.0;
  return r;
}

double single_battery_energy(int n_c, double omega, double lambda, double t) {
  const double s = std::sin(std::sqrt(static_cast<double>(n_c)) * lambda * t);
  return omega * s * s;
}

ClosedFormResult two_battery(int n_c, double omega, double lambda) {
  if (n_c < 2)
    throw DomainError("n_c must be ≥ 2");
  return three_level(n_c, omega, lambda, Family::TwoBattery);
}

double two_battery_energy(int n_c, double omega, double lambda, double t) {
  return three_level_energy(n_c, omega, lambda, t);
}

PopulationState two_battery_rho(int n_c, double lambda, double t) {
  if (n_c < 2)
    throw DomainError("n_c must be ≥ 2");
  if (!(t >= 0.0))
    throw DomainError("time must be non-negative");
  require_lambda(lambda);
  const double n = n_c;
  const double denom = 3.0 * n - 2.0;
  const double wt = three_level_frequency(n_c, lambda) * t;
  const double c = std::cos(wt);
  const double s = std::sin(wt);
  const double a = 2.0 * (n - 1.0) + n * c;
  PopulationState p;
  p.t = t;
  p.probs = {a * a / (denom * denom), n / denom * s * s,
             2.0 * n * (n - 1.0) / (denom * denom) * (1.0 - c) * (1.0 - c)};
  return p;
}

ThreeLevelSpectrum two_battery_spectrum(int n_c, double omega, double lambda) {
  if (n_c < 2)
    throw DomainError("n_c must be ≥ 2");
  require_lambda(lambda);
  const double n = n_c;
  const double base = omega * (n / 2.0 - 1.0);
  const double split = three_level_frequency(n_c, lambda);
  const double norm = 1.0 / std::sqrt(2.0 * (3.0 * n - 2.0));

  // Columns: e_1 = base, e_2 = base + split, e_3 = base - split (lambda > 0).
  Eigen::Matrix3d v;
  v << 2.0 * std::sqrt(n - 1.0), std::sqrt(n), std::sqrt(n),
      0.0, std::sqrt(3.0 * n - 2.0), -std::sqrt(3.0 * n - 2.0),
      -std::sqrt(2.0 * n), std::sqrt(2.0 * (n - 1.0)), std::sqrt(2.0 * (n - 1.0));
  v *= norm;
  if (lambda < 0.0)
    v.row(1) = -v.row(1);

  ThreeLevelSpectrum out;
  out.eigenvalues = {base - split, base, base + split};
  out.eigenvectors.col(0) = v.col(2);
  out.eigenvectors.col(1) = v.col(0);
  out.eigenvectors.col(2) = v.col(1);
  return out;
}

ClosedFormResult two_charger(int n_b, double omega, double lambda) {
  if (n_b < 2)
    throw DomainError("n_b must be ≥ 2");
  return three_level(n_b, omega, lambda, Family::TwoCharger);
}

double two_charger_energy(int n_b, double omega, double lambda, double t) {
  return three_level_energy(n_b, omega, lambda, t);
}

} // namespace csb::analytic
