#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "qa/classical.hpp"
#include "qa/ising.hpp"
#include "qa/schedule.hpp"

namespace qa {

struct QuantumState {
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Exact ground state of H at the schedule's initial gamma. Requires gamma > 0.
QuantumState initial_ground_state(const HamiltonianView& h, const Limits& limits = {});

/// <psi|H_pot|psi> - e_min. Nonnegative up to rounding.
double residual_energy(const QuantumState& state, const Eigen::VectorXd& potential_diag,
                       double e_min);

/// Norm-preserving propagator for i d/dt psi = (diag(potential) - Gamma(t) G) psi.
///
/// One step is a triple-jump composition of Strang splittings; the diagonal
/// and driver half-flows are applied exactly (the driver exponential goes
/// through the Walsh-Hadamard transform, where G is diagonal), so every factor
/// is unitary and the only norm drift is floating-point rounding. The
/// composition is globally 4th order in the step size for smooth Gamma(t).
class Propagator {
public:
  Propagator(const IsingInstance& inst, DriverKind driver, const Limits& limits = {});

  /// Advances the state from t_begin to t_end in uniform steps of at most dt.
  /// t_end < t_begin integrates backwards.
  void advance(QuantumState& state, const Schedule& schedule, double t_begin, double t_end,
               double dt) const;

  const Eigen::VectorXd& potential() const { return potential_; }
  DriverKind driver() const { return driver_; }
  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return static_cast<std::size_t>(potential_.size()); }

private:
  void kick(Eigen::VectorXcd& psi, double theta) const;  // psi <- exp(i theta G) psi

  Eigen::VectorXd potential_;
  Eigen::VectorXd driver_level_;        // driver eigenvalue by popcount, size n_sites+1
  std::vector<std::uint8_t> popcount_;  // popcount by x-basis index
  DriverKind driver_;
  int n_sites_ = 0;
};

struct StepControl {
  double dt = 1e-2;
  int samples = 100;  // number of sampling intervals over [0, t_final]
};

struct TrajectorySample {
  double t = 0.0;
  double gamma = 0.0;
  double fidelity = 0.0;    // overlap with the instantaneous ground manifold
  double excitation = 0.0;  // aggregated weight on all excited levels
  double gap = 0.0;
  double residual_energy = 0.0;
  double success_prob = 0.0;
  double norm_drift = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  QuantumState final_state;
  double final_gamma = 0.0;
};

/// Integrates the Schrodinger dynamics from the exact initial ground state and
/// records observables at samples+1 equally spaced times (including t = 0).
/// Each sample costs one dense eigensolve, so the dense limit applies.
/// Aborts with NumericalError when |norm - 1| exceeds 1e-6.
Trajectory evolve(const IsingInstance& inst, DriverKind driver, const Schedule& schedule,
                  double t_final, const StepControl& control, const Limits& limits = {});

/// CSV columns: t, gamma, fidelity, excitation, gap, residual_energy,
/// success_prob, norm_drift.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace qa
