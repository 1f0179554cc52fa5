#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "csb/eigensolver.hpp"
#include "csb/subspace.hpp"

namespace csb {

// Diagonal of the battery reduced state in the Dicke basis at time t:
// probs[k] is the weight of |k>_b<k|.
struct PopulationState {
  double t = 0.0;
  std::vector<double> probs;
};

// Uniformly sampled transported energy and battery entropy (bits).
struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> delta_e;
  std::vector<double> entropy;
};

// Probabilities below zero by less than this are treated as rounding noise.
inline constexpr double kNegativeProbabilityTolerance = 1e-14;

// Eigenmodes whose overlap with the initial state is below this are dropped.
inline constexpr double kModeCutoff = 1e-16;

// Evolves |psi(0)> = (1, 0, ..., 0) through U(t) = V exp(-iDt) V^T.
// Only modes with non-negligible overlap with the initial state are kept, so a
// single evaluation costs O(dim * active_modes).
class Propagator {
public:
  explicit Propagator(const EigenDecomposition &decomp, double mode_cutoff = kModeCutoff);

  int dim() const { return static_cast<int>(modes_.rows()); }
  int active_modes() const { return static_cast<int>(modes_.cols()); }

  // Largest frequency present in any population: spread of the active eigenvalues.
  double bandwidth() const;

  PopulationState populations(double t) const;

  // sum_k k probs[k] and its time derivative.
  double mean_excitation(double t) const;
  double mean_excitation_rate(double t) const;

  // Column j holds the populations at times[j].
  Eigen::MatrixXd population_block(std::span<const double> times) const;
  std::vector<double> mean_excitations(std::span<const double> times) const;

private:
  void amplitudes(double t, Eigen::VectorXd &re, Eigen::VectorXd &im) const;

  Eigen::VectorXd energies_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd modes_;
};

PopulationState populations_at(const EigenDecomposition &decomp, double t);

// omega_b * sum_k k probs[k]: the constant -omega_b N_b / 2 offset cancels.
double transported_energy(const PopulationState &p, const BatteryConfig &config);

// <H_b + H_c>; conserved whenever omega_b == omega_c.
double bare_energy(const PopulationState &p, const BatteryConfig &config);

// -sum p log2 p with 0 log 0 = 0. Throws NumericError on a probability below
// -kNegativeProbabilityTolerance.
double entanglement_entropy(const PopulationState &p);

// Zeroes probabilities within tolerance below zero; throws on larger negatives.
void clamp_probabilities(std::vector<double> &probs);

ObservableSeries observable_series(const BatteryConfig &config, double t_max, int samples);

} // namespace csb
