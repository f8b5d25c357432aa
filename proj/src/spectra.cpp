#include "qa/spectra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace qa {

namespace {

void fix_column_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&imax);
    if (vectors(imax, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

}  // namespace

Spectrum full_spectrum(const HamiltonianView& h, bool want_vectors, const Limits& limits) {
  const Eigen::MatrixXd dense = materialize_dense(h, limits);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(dense, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver failed to converge (dim " +
                         std::to_string(dense.rows()) + ")");
  Spectrum spec;
  spec.eigenvalues = solver.eigenvalues();
  spec.gamma_at = h.gamma;
  if (want_vectors) {
    spec.eigenvectors = solver.eigenvectors();
    fix_column_signs(spec.eigenvectors);
  }
  return spec;
}

double gap(const Spectrum& spec) {
  if (spec.eigenvalues.size() < 2)
    throw DimensionError("gap needs at least two eigenvalues");
  return spec.eigenvalues[1] - spec.eigenvalues[0];
}

AdiabaticEstimate adiabatic_estimate(const HamiltonianView& h, double dgamma_dt,
                                     const Limits& limits) {
  if (!(h.gamma > 0.0)) throw Error("adiabatic_estimate requires gamma > 0");
  if (!(dgamma_dt <= 0.0)) throw Error("adiabatic_estimate requires dGamma/dt <= 0");
  const Spectrum spec = full_spectrum(h, true, limits);
  const Eigen::Index dim = spec.eigenvalues.size();
  // dH/dt = -(dGamma/dt) G, so matrix elements are |dGamma/dt| <n|G|0>
  const Eigen::VectorXd g_ground =
      apply_driver_generator(h.driver, h.n_sites, Eigen::VectorXd(spec.eigenvectors.col(0)));
  AdiabaticEstimate est;
  est.ratios.resize(dim - 1);
  est.ratios_squared.resize(dim - 1);
  const double eps0 = spec.eigenvalues[0];
  for (Eigen::Index n = 1; n < dim; ++n) {
    const double denom = spec.eigenvalues[n] - eps0;
    if (!(denom > 0.0))
      throw SingularityError("vanishing gap between level " + std::to_string(n) +
                             " and the ground state");
    const double numer = std::abs(dgamma_dt) * std::abs(spec.eigenvectors.col(n).dot(g_ground));
    const double ratio = numer / (denom * denom);
    est.ratios[n - 1] = ratio;
    est.ratios_squared[n - 1] = ratio * ratio;
  }
  est.max_ratio = est.ratios.size() > 0 ? est.ratios.maxCoeff() : 0.0;
  return est;
}

}  // namespace qa
