#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "qa/ising.hpp"

namespace qa {

/// Exact classical spectrum edges and their configuration manifolds.
struct ClassicalSummary {
  int n_sites = 0;
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<std::uint64_t> ground_states;  // all b with energy == e_min
  std::vector<std::uint64_t> max_states;     // all b with energy == e_max

  std::size_t ground_degeneracy() const { return ground_states.size(); }
  std::size_t max_degeneracy() const { return max_states.size(); }
};

/// Brute-force enumeration of all 2^N configurations by direct per-configuration
/// term summation. Deliberately kept independent of potential_diagonal's
/// vectorized path so the two can arbitrate each other.
ClassicalSummary enumerate_classical(const IsingInstance& inst, const Limits& limits = {});

/// Total weight of `state` on the degenerate classical ground manifold.
/// Requires |state| = 2^N and norm within 1e-6 of 1. Result clamped to [0, 1].
double success_probability(const Eigen::VectorXcd& state, const ClassicalSummary& summary);

}  // namespace qa
