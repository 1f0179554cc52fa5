#include "csb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csb/errors.hpp"

namespace csb {
namespace {

// Time blocks for batched evaluation; bounds the temporary (dim x block) matrices.
constexpr Eigen::Index kTimeBlock = 256;

} // namespace

Propagator::Propagator(const EigenDecomposition &decomp, double mode_cutoff) {
  const Eigen::Index n = decomp.dim();
  if (n < 1 || decomp.eigenvectors.rows() != n || decomp.eigenvectors.cols() != n)
    throw DomainError("malformed eigendecomposition");

  std::vector<Eigen::Index> keep;
  for (Eigen::Index m = 0; m < n; ++m)
    if (std::abs(decomp.eigenvectors(0, m)) > mode_cutoff)
      keep.push_back(m);

  const auto count = static_cast<Eigen::Index>(keep.size());
  energies_.resize(count);
  weights_.resize(count);
  modes_.resize(n, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    energies_(j) = decomp.eigenvalues(keep[j]);
    weights_(j) = decomp.eigenvectors(0, keep[j]);
    modes_.col(j) = decomp.eigenvectors.col(keep[j]);
  }
  // Global phase: centre the spectrum to keep the phases e*t small.
  if (count > 0)
    energies_.array() -= 0.5 * (energies_.minCoeff() + energies_.maxCoeff());
}

double Propagator::bandwidth() const {
  if (energies_.size() == 0)
    return 0.0;
  return energies_.maxCoeff() - energies_.minCoeff();
}

void Propagator::amplitudes(double t, Eigen::VectorXd &re, Eigen::VectorXd &im) const {
  const Eigen::ArrayXd phase = energies_.array() * t;
  const Eigen::VectorXd a = (weights_.array() * phase.cos()).matrix();
  const Eigen::VectorXd b = (weights_.array() * phase.sin()).matrix();
  re.noalias() = modes_ * a;
  im.noalias() = -(modes_ * b);
}

PopulationState Propagator::populations(double t) const {
  Eigen::VectorXd re, im;
  amplitudes(t, re, im);
  PopulationState out;
  out.t = t;
  out.probs.resize(dim());
  for (int k = 0; k < dim(); ++k)
    out.probs[k] = re(k) * re(k) + im(k) * im(k);
  return out;
}

double Propagator::mean_excitation(double t) const {
  Eigen::VectorXd re, im;
  amplitudes(t, re, im);
  double sum = 0.0;
  for (int k = 1; k < dim(); ++k)
    sum += k * (re(k) * re(k) + im(k) * im(k));
  return sum;
}

double Propagator::mean_excitation_rate(double t) const {
  // psi = V w with w = c exp(-i e t); d psi/dt = V (-i e w).
  const Eigen::ArrayXd phase = energies_.array() * t;
  const Eigen::ArrayXd a = weights_.array() * phase.cos();
  const Eigen::ArrayXd b = -weights_.array() * phase.sin();
  const Eigen::VectorXd re = modes_ * a.matrix();
  const Eigen::VectorXd im = modes_ * b.matrix();
  const Eigen::VectorXd dre = modes_ * (energies_.array() * b).matrix();
  const Eigen::VectorXd dim_ = modes_ * (-energies_.array() * a).matrix();
  double sum = 0.0;
  for (int k = 1; k < dim(); ++k)
    sum += k * (re(k) * dre(k) + im(k) * dim_(k));
  return 2.0 * sum;
}

Eigen::MatrixXd Propagator::population_block(std::span<const double> times) const {
  const auto count = static_cast<Eigen::Index>(times.size());
  Eigen::MatrixXd out(dim(), count);
  Eigen::MatrixXd a(active_modes(), kTimeBlock), b(active_modes(), kTimeBlock);
  Eigen::MatrixXd re, im;
  for (Eigen::Index start = 0; start < count; start += kTimeBlock) {
    const Eigen::Index len = std::min(kTimeBlock, count - start);
    for (Eigen::Index j = 0; j < len; ++j) {
      const Eigen::ArrayXd phase = energies_.array() * times[start + j];
      a.col(j) = (weights_.array() * phase.cos()).matrix();
      b.col(j) = (weights_.array() * phase.sin()).matrix();
    }
    re.noalias() = modes_ * a.leftCols(len);
    im.noalias() = modes_ * b.leftCols(len);
    out.middleCols(start, len) = re.array().square() + im.array().square();
  }
  return out;
}

std::vector<double> Propagator::mean_excitations(std::span<const double> times) const {
  const Eigen::VectorXd k = Eigen::VectorXd::LinSpaced(dim(), 0.0, dim() - 1.0);
  std::vector<double> out(times.size());
  for (std::size_t start = 0; start < times.size(); start += kTimeBlock) {
    const std::size_t len = std::min<std::size_t>(kTimeBlock, times.size() - start);
    const Eigen::MatrixXd block = population_block(times.subspan(start, len));
    const Eigen::RowVectorXd means = k.transpose() * block;
    for (std::size_t j = 0; j < len; ++j)
      out[start + j] = means(static_cast<Eigen::Index>(j));
  }
  return out;
}

PopulationState populations_at(const EigenDecomposition &decomp, double t) {
  if (!(t >= 0.0))
    throw DomainError("time must be non-negative");
  return Propagator(decomp).populations(t);
}

double transported_energy(const PopulationState &p, const BatteryConfig &config) {
  double sum = 0.0;
  for (std::size_t k = 1; k < p.probs.size(); ++k)
    sum += static_cast<double>(k) * p.probs[k];
  return config.omega_b * sum;
}

double bare_energy(const PopulationState &p, const BatteryConfig &config) {
  double sum = 0.0;
  for (std::size_t k = 0; k < p.probs.size(); ++k) {
    const double sz = static_cast<double>(k) - 0.5 * config.n_b;
    const double jz = (config.n_c - static_cast<double>(k)) - 0.5 * config.n_c;
    sum += p.probs[k] * (config.omega_b * sz + config.omega_c * jz);
  }
  return sum;
}

void clamp_probabilities(std::vector<double> &probs) {
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] < 0.0) {
      if (probs[k] < -kNegativeProbabilityTolerance)
        throw NumericError("negative probability " + std::to_string(probs[k]) + " at level " +
                               std::to_string(k),
                           static_cast<std::ptrdiff_t>(k));
      probs[k] = 0.0;
    }
  }
}

double entanglement_entropy(const PopulationState &p) {
  std::vector<double> probs = p.probs;
  clamp_probabilities(probs);
  double s = 0.0;
  for (double x : probs)
    if (x > 0.0)
      s -= x * std::log2(x);
  return std::max(s, 0.0);
}

ObservableSeries observable_series(const BatteryConfig &config, double t_max, int samples) {
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw DomainError("t_max must be positive");
  if (samples < 2)
    throw DomainError("samples must be at least 2");

  const Propagator prop(decompose(build_hamiltonian(config)));

  ObservableSeries series;
  series.times.resize(samples);
  for (int i = 0; i < samples; ++i)
    series.times[i] = t_max * i / (samples - 1);
  series.times.back() = t_max;

  series.delta_e.resize(samples);
  series.entropy.resize(samples);
  PopulationState p;
  for (int start = 0; start < samples; start += static_cast<int>(kTimeBlock)) {
    const int len = std::min<int>(static_cast<int>(kTimeBlock), samples - start);
    const Eigen::MatrixXd block =
        prop.population_block(std::span<const double>(series.times).subspan(start, len));
    for (int j = 0; j < len; ++j) {
      p.t = series.times[start + j];
      p.probs.assign(block.col(j).data(), block.col(j).data() + block.rows());
      series.delta_e[start + j] = transported_energy(p, config);
      series.entropy[start + j] = entanglement_entropy(p);
    }
  }
  return series;
}

} // namespace csb
