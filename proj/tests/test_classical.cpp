#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "qa/classical.hpp"

using namespace qa;

TEST_CASE("enumerate_classical on the textbook cases") {
  const ClassicalSummary single = enumerate_classical(oracle::single_field());
  CHECK(single.e_min == -1.0);
  CHECK(single.e_max == 1.0);
  CHECK(single.ground_states == std::vector<std::uint64_t>{0});
  CHECK(single.max_states == std::vector<std::uint64_t>{1});

  const ClassicalSummary ferro = enumerate_classical(oracle::ferromagnet2());
  CHECK(ferro.e_min == -1.0);
  CHECK(ferro.e_max == 1.0);
  CHECK(ferro.ground_degeneracy() == 2);
  CHECK(ferro.max_degeneracy() == 2);
  CHECK(ferro.ground_states == std::vector<std::uint64_t>{0, 3});
  CHECK(ferro.max_states == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("enumeration extremes equal the vectorized potential exactly") {
  std::mt19937_64 rng(201);
  for (int n = 2; n <= 12; n += 2) {
    const IsingInstance inst = random_instance(n, {{1, n}, {2, 2 * n}}, rng);
    const ClassicalSummary summary = enumerate_classical(inst);
    const Eigen::VectorXd pot = potential_diagonal(inst);
    CHECK(summary.e_min == pot.minCoeff());
    CHECK(summary.e_max == pot.maxCoeff());
    for (std::uint64_t b : summary.ground_states) {
      CHECK(pot[static_cast<Eigen::Index>(b)] == summary.e_min);
      CHECK(std::abs(oracle::classical_energy(inst, b) - summary.e_min) <= 1e-12);
    }
    for (std::uint64_t b : summary.max_states)
      CHECK(std::abs(oracle::classical_energy(inst, b) - summary.e_max) <= 1e-12);
  }
}

TEST_CASE("success_probability counts the whole ground manifold") {
  const ClassicalSummary ferro = enumerate_classical(oracle::ferromagnet2());

  Eigen::VectorXcd pure = Eigen::VectorXcd::Zero(4);
  pure[3] = 1.0;
  CHECK(success_probability(pure, ferro) == 1.0);

  const Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(4, 0.5);
  CHECK(success_probability(uniform, ferro) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("success_probability is phase and ordering invariant") {
  std::mt19937_64 rng(202);
  const IsingInstance inst = oracle::random_dense_instance(4, rng);
  ClassicalSummary summary = enumerate_classical(inst);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd state(16);
  for (Eigen::Index i = 0; i < 16; ++i) state[i] = {gauss(rng), gauss(rng)};
  state.normalize();
  const double base = success_probability(state, summary);
  const Eigen::VectorXcd rotated = std::polar(1.0, 1.234) * state;
  CHECK(success_probability(rotated, summary) == doctest::Approx(base).epsilon(1e-12));
  std::reverse(summary.ground_states.begin(), summary.ground_states.end());
  CHECK(success_probability(state, summary) == base);
}

TEST_CASE("success_probability input validation") {
  const ClassicalSummary ferro = enumerate_classical(oracle::ferromagnet2());
  CHECK_THROWS_AS(success_probability(Eigen::VectorXcd::Zero(8), ferro), DimensionError);
  CHECK_THROWS_AS(success_probability(Eigen::VectorXcd::Constant(4, 0.7), ferro), NumericalError);
}

TEST_CASE("enumeration budget") {
  Limits tiny;
  tiny.enumeration_limit = 4;
  std::mt19937_64 rng(203);
  const IsingInstance inst = oracle::random_dense_instance(3, rng);
  CHECK_THROWS_AS(enumerate_classical(inst, tiny), CapacityError);
}
