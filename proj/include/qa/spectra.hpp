#pragma once

#include <Eigen/Core>

#include "qa/ising.hpp"

namespace qa {

/// Instantaneous eigensystem of H at one gamma. Eigenvalues ascend; for
/// gamma > 0 the lowest one is strictly simple and its eigenvector is the
/// entrywise-positive Perron vector of e_max*I - H.
///
/// Sign convention: every eigenvector column is scaled so its
/// largest-magnitude entry is positive.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // orthonormal columns when requested, else 0x0
  double gamma_at = 0.0;

  bool has_vectors() const { return eigenvectors.size() > 0; }
};

/// Full dense eigensystem of the real symmetric H. Eigensolver failure is
/// surfaced as NumericalError, never truncated.
Spectrum full_spectrum(const HamiltonianView& h, bool want_vectors, const Limits& limits = {});

/// First spectral gap eps_1 - eps_0 of a sorted spectrum.
double gap(const Spectrum& spec);

/// Per-level adiabatic excitation estimate at one instant:
/// |<n| dH/dt |0>| / (eps_n - eps_0)^2 for n >= 1, with dH/dt = (dGamma/dt) * (-G).
struct AdiabaticEstimate {
  Eigen::VectorXd ratios;          // index n-1 holds level n
  Eigen::VectorXd ratios_squared;  // elementwise square, the estimated excitation weights
  double max_ratio = 0.0;
};

AdiabaticEstimate adiabatic_estimate(const HamiltonianView& h, double dgamma_dt,
                                     const Limits& limits = {});

}  // namespace qa
