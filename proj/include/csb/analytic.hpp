#pragma once

#include <array>

#include <Eigen/Dense>

#include "csb/dynamics.hpp"

namespace csb::analytic {

enum class Family { SingleBattery, TwoBattery, TwoCharger };

const char *to_string(Family family);

struct ClosedFormResult {
  double tau = 0.0;
  double delta_e_tau = 0.0;
  double entropy_tau = 0.0;
  Family family = Family::SingleBattery;
};

// Large-N limits of the two-spin families (energies in units of omega).
inline constexpr double kAsymptoticEnergy = 16.0 / 9.0;
inline constexpr double kAsymptoticGroundPopulation = 1.0 / 9.0;
inline constexpr double kAsymptoticTopPopulation = 8.0 / 9.0;

// h(x) = -x log2 x - (1 - x) log2 (1 - x), with 0 log 0 = 0.
double binary_entropy(double x);

// N_b = 1: Delta E(t) = omega sin^2(sqrt(N_c) lambda t).
ClosedFormResult single_battery(int n_c, double omega, double lambda);
double single_battery_energy(int n_c, double omega, double lambda, double t);

// N_b = 2 <= N_c, omega_b = omega_c = omega, delta = 0.
ClosedFormResult two_battery(int n_c, double omega, double lambda);
double two_battery_energy(int n_c, double omega, double lambda, double t);
PopulationState two_battery_rho(int n_c, double lambda, double t);

// lambda sqrt(2 (3n - 2)), the single frequency of the three-level problem.
double three_level_frequency(int n, double lambda);

// Eigenvalues (ascending) and eigenvector matrix of the N_b = 2 Hamiltonian,
// columns ordered to match the eigenvalues.
struct ThreeLevelSpectrum {
  std::array<double, 3> eigenvalues{};
  Eigen::Matrix3d eigenvectors;
};
ThreeLevelSpectrum two_battery_spectrum(int n_c, double omega, double lambda);

// N_c = 2 <= N_b: mirror of two_battery with n_b substituted.
ClosedFormResult two_charger(int n_b, double omega, double lambda);
double two_charger_energy(int n_b, double omega, double lambda, double t);

} // namespace csb::analytic
