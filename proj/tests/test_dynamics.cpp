#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "csb/dynamics.hpp"
#include "csb/errors.hpp"

using namespace csb;
using std::numbers::pi;

namespace {

EigenDecomposition spectrum(const BatteryConfig &c) { return decompose(build_hamiltonian(c)); }

double total(const PopulationState &p) {
  double s = 0.0;
  for (double x : p.probs)
    s += x;
  return s;
}

// Independent binary entropy for the frozen values below.
double h2(double x) { return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x); }

} // namespace

TEST_CASE("identity evolution at t = 0") {
  for (int nb : {1, 3, 8})
    for (int nc : {1, 4, 9}) {
      const PopulationState p = populations_at(spectrum({.n_b = nb, .n_c = nc}), 0.0);
      CHECK(p.probs[0] == doctest::Approx(1.0).epsilon(1e-13));
      for (std::size_t k = 1; k < p.probs.size(); ++k)
        CHECK(p.probs[k] < 1e-13);
    }
}

TEST_CASE("single pair flips at t = pi / 2") {
  const PopulationState p = populations_at(spectrum({.n_b = 1, .n_c = 1}), pi / 2);
  CHECK(p.probs[0] < 1e-14);
  CHECK(p.probs[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("n_b = n_c = 2 is fully charged at pi / sqrt(8)") {
  const BatteryConfig c{.n_b = 2, .n_c = 2};
  const PopulationState p = populations_at(spectrum(c), pi / std::sqrt(8.0));
  CHECK(p.probs[0] < 1e-14);
  CHECK(p.probs[1] < 1e-14);
  CHECK(p.probs[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(transported_energy(p, c) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(entanglement_entropy(p) < 1e-10);
}

TEST_CASE("transported energy at the n_b = 2 optimum") {
  const BatteryConfig c{.n_b = 2, .n_c = 3};
  const PopulationState p = populations_at(spectrum(c), pi / std::sqrt(14.0));
  CHECK(transported_energy(p, c) == doctest::Approx(96.0 / 49.0).epsilon(1e-13));
  CHECK(transported_energy(p, c) == doctest::Approx(1.95918).epsilon(1e-5));

  PopulationState ground;
  ground.probs = {1.0, 0.0, 0.0};
  CHECK(transported_energy(ground, c) == 0.0);
  CHECK(entanglement_entropy(ground) == 0.0);
}

TEST_CASE("entropy at the n_b = 2, n_c = 4 optimum is h(0.04)") {
  const PopulationState p = populations_at(spectrum({.n_b = 2, .n_c = 4}), pi / std::sqrt(20.0));
  CHECK(p.probs[0] == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(entanglement_entropy(p) == doctest::Approx(h2(0.04)).epsilon(1e-11));
  CHECK(entanglement_entropy(p) == doctest::Approx(0.24229).epsilon(1e-5));
}

TEST_CASE("normalisation, conservation and bounds over random configurations") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 60);
  std::uniform_real_distribution<double> unit(0.2, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double omega = unit(rng);
    const BatteryConfig c{.n_b = size(rng), .n_c = size(rng), .omega_b = omega, .omega_c = omega,
                          .lambda = unit(rng), .delta = unit(rng) - 1.0};
    const Propagator prop(spectrum(c));
    const int d = std::min(c.n_b, c.n_c);
    const double e0 = bare_energy(prop.populations(0.0), c);
    for (double t = 0.0; t < 10.0; t += 0.37) {
      const PopulationState p = prop.populations(t);
      CHECK(std::abs(total(p) - 1.0) < 1e-10);
      CHECK(std::abs(bare_energy(p, c) - e0) < 1e-10 * std::max(1.0, std::abs(e0)));
      const double s = entanglement_entropy(p);
      CHECK(s >= 0.0);
      CHECK(s <= std::log2(d + 1.0) + 1e-12);
      CHECK(transported_energy(p, c) <= omega * d + 1e-10);
    }
  }
}

TEST_CASE("n_b = 2 populations are periodic in 2 pi / omega_bar") {
  for (int nc : {2, 3, 7, 25}) {
    const Propagator prop(spectrum({.n_b = 2, .n_c = nc}));
    const double period = 2.0 * pi / std::sqrt(2.0 * (3.0 * nc - 2.0));
    for (double t : {0.1, 0.77, 2.5}) {
      const PopulationState a = prop.populations(t);
      const PopulationState b = prop.populations(t + period);
      for (int k = 0; k < 3; ++k)
        CHECK(std::abs(a.probs[k] - b.probs[k]) < 1e-8);
    }
  }
}

TEST_CASE("mean excitation rate matches a central difference") {
  const Propagator prop(spectrum({.n_b = 6, .n_c = 9}));
  const double h = 1e-6;
  for (double t : {0.05, 0.4, 1.3}) {
    const double fd = (prop.mean_excitation(t + h) - prop.mean_excitation(t - h)) / (2.0 * h);
    CHECK(prop.mean_excitation_rate(t) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("batched populations agree with single evaluations") {
  const Propagator prop(spectrum({.n_b = 20, .n_c = 31}));
  std::vector<double> times;
  for (int i = 0; i < 600; ++i)
    times.push_back(0.013 * i);
  const Eigen::MatrixXd block = prop.population_block(times);
  const std::vector<double> means = prop.mean_excitations(times);
  for (int i : {0, 1, 255, 256, 599}) {
    const PopulationState p = prop.populations(times[i]);
    for (int k = 0; k < prop.dim(); ++k)
      CHECK(std::abs(block(k, i) - p.probs[k]) < 1e-13);
    CHECK(means[i] == doctest::Approx(prop.mean_excitation(times[i])).epsilon(1e-12));
  }
}

TEST_CASE("probability clamping") {
  std::vector<double> probs{0.5, -1e-15, 0.5};
  clamp_probabilities(probs);
  CHECK(probs[1] == 0.0);

  PopulationState bad;
  bad.probs = {1.0, -1e-6};
  CHECK_THROWS_AS(entanglement_entropy(bad), NumericError);
  try {
    entanglement_entropy(bad);
  } catch (const NumericError &e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("observable series") {
  SUBCASE("single battery reaches omega at pi / 4") {
    const ObservableSeries s = observable_series({.n_b = 1, .n_c = 4}, pi / 4, 2);
    CHECK(s.times == std::vector<double>{0.0, pi / 4});
    CHECK(std::abs(s.delta_e[0]) < 1e-12);
    CHECK(s.delta_e[1] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(s.entropy[0]) < 1e-12);
  }
  SUBCASE("continuity at t = 0") {
    const ObservableSeries s = observable_series({.n_b = 5, .n_c = 8}, 1e-9, 2);
    CHECK(std::abs(s.delta_e[0]) < 1e-12);
    CHECK(std::abs(s.delta_e[1]) < 1e-12);
  }
  SUBCASE("dense scan of the n_b = n_c = 2 oscillation peaks at 2") {
    const ObservableSeries s = observable_series({.n_b = 2, .n_c = 2}, 2.0 * pi, 10000);
    CHECK(s.delta_e.size() == 10000);
    CHECK(s.times.back() == 2.0 * pi);
    const double peak = *std::max_element(s.delta_e.begin(), s.delta_e.end());
    CHECK(std::abs(peak - 2.0) < 1e-6);
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(observable_series({.n_b = 1, .n_c = 1}, 1.0, 1), DomainError);
    CHECK_THROWS_AS(observable_series({.n_b = 1, .n_c = 1}, 0.0, 10), DomainError);
    CHECK_THROWS_AS(populations_at(spectrum({.n_b = 1, .n_c = 1}), -1.0), DomainError);
  }
}
