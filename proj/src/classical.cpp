#include "qa/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qa {

ClassicalSummary enumerate_classical(const IsingInstance& inst, const Limits& limits) {
  validate_instance(inst);
  if (inst.dim() > limits.enumeration_limit)
    throw CapacityError("state space 2^" + std::to_string(inst.n_sites) +
                        " exceeds the enumeration limit");
  const std::uint64_t dim = inst.dim();
  ClassicalSummary summary;
  summary.n_sites = inst.n_sites;
  summary.e_min = std::numeric_limits<double>::infinity();
  summary.e_max = -std::numeric_limits<double>::infinity();
  for (std::uint64_t b = 0; b < dim; ++b) {
    double energy = 0.0;
    for (const IsingTerm& term : inst.terms) {
      int prod = 1;
      for (int site : term.sites) prod *= ((b >> site) & 1u) ? -1 : 1;
      energy -= term.coefficient * prod;
    }
    if (energy < summary.e_min) {
      summary.e_min = energy;
      summary.ground_states.clear();
    }
    if (energy == summary.e_min) summary.ground_states.push_back(b);
    if (energy > summary.e_max) {
      summary.e_max = energy;
      summary.max_states.clear();
    }
    if (energy == summary.e_max) summary.max_states.push_back(b);
  }
  return summary;
}

double success_probability(const Eigen::VectorXcd& state, const ClassicalSummary& summary) {
  const std::uint64_t dim = std::uint64_t{1} << summary.n_sites;
  if (static_cast<std::uint64_t>(state.size()) != dim)
    throw DimensionError("state length does not match 2^" + std::to_string(summary.n_sites));
  const double norm = state.norm();
  if (!(std::abs(norm - 1.0) <= 1e-6))
    throw NumericalError("state is not normalized: |norm - 1| = " + std::to_string(std::abs(norm - 1.0)));
  double weight = 0.0;
  for (std::uint64_t b : summary.ground_states)
    weight += std::norm(state[static_cast<Eigen::Index>(b)]);
  return std::clamp(weight, 0.0, 1.0);
}

}  // namespace qa
