#include "qa/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <ostream>
#include <string>

#include "qa/spectra.hpp"
#include "qa/walsh.hpp"

namespace qa {

namespace {

using Complex = std::complex<double>;

// triple-jump composition coefficients: w1, w0, w1 with w0 = 1 - 2 w1
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = 1.0 - 2.0 * kW1;

Eigen::VectorXcd diag_phase(const Eigen::VectorXd& potential, double coeff) {
  Eigen::VectorXcd out(potential.size());
  for (Eigen::Index i = 0; i < potential.size(); ++i)
    out[i] = std::polar(1.0, -coeff * potential[i]);
  return out;
}

}  // namespace

QuantumState initial_ground_state(const HamiltonianView& h, const Limits& limits) {
  if (!(h.gamma > 0.0)) throw Error("initial ground state needs gamma > 0");
  const Spectrum spec = full_spectrum(h, true, limits);
  QuantumState state;
  state.amplitudes = spec.eigenvectors.col(0).cast<Complex>();
  return state;
}

double residual_energy(const QuantumState& state, const Eigen::VectorXd& potential_diag,
                       double e_min) {
  if (state.amplitudes.size() != potential_diag.size())
    throw DimensionError("state and potential have different lengths");
  double mean = 0.0;
  for (Eigen::Index b = 0; b < potential_diag.size(); ++b)
    mean += std::norm(state.amplitudes[b]) * potential_diag[b];
  return mean - e_min;
}

Propagator::Propagator(const IsingInstance& inst, DriverKind driver, const Limits& limits)
    : driver_(driver), n_sites_(inst.n_sites) {
  potential_ = potential_diagonal(inst, limits);
  driver_level_.resize(n_sites_ + 1);
  for (int ones = 0; ones <= n_sites_; ++ones)
    driver_level_[ones] = driver_xbasis_eigenvalue(driver, n_sites_, ones);
  popcount_.resize(dim());
  for (std::uint64_t m = 0; m < dim(); ++m)
    popcount_[m] = static_cast<std::uint8_t>(std::popcount(m));
}

void Propagator::kick(Eigen::VectorXcd& psi, double theta) const {
  walsh_hadamard(psi);
  // fold the 1/2^N of the inverse transform into the phase factors
  const double scale = std::ldexp(1.0, -n_sites_);
  Eigen::VectorXcd phase(n_sites_ + 1);
  for (int ones = 0; ones <= n_sites_; ++ones)
    phase[ones] = std::polar(scale, theta * driver_level_[ones]);
  for (Eigen::Index m = 0; m < psi.size(); ++m) psi[m] *= phase[popcount_[m]];
  walsh_hadamard(psi);
}

void Propagator::advance(QuantumState& state, const Schedule& schedule, double t_begin,
                         double t_end, double dt) const {
  if (!(dt > 0.0)) throw Error("advance requires dt > 0");
  if (static_cast<std::size_t>(state.amplitudes.size()) != dim())
    throw DimensionError("state length does not match the propagator");
  const double span = t_end - t_begin;
  if (span == 0.0) return;
  const long nsteps =
      std::max(1l, static_cast<long>(std::ceil(std::abs(span) / dt - 1e-12)));
  const double h = span / static_cast<double>(nsteps);

  const Eigen::VectorXcd half_w1 = diag_phase(potential_, 0.5 * kW1 * h);
  const Eigen::VectorXcd full_w1 = diag_phase(potential_, kW1 * h);
  const Eigen::VectorXcd mid = diag_phase(potential_, 0.5 * (kW1 + kW0) * h);

  Eigen::VectorXcd& psi = state.amplitudes;
  psi.array() *= half_w1.array();
  for (long k = 0; k < nsteps; ++k) {
    const double t0 = t_begin + k * h;
    // substep midpoints of the w1 / w0 / w1 composition
    kick(psi, kW1 * h * gamma_at(schedule, t0 + 0.5 * kW1 * h));
    psi.array() *= mid.array();
    kick(psi, kW0 * h * gamma_at(schedule, t0 + (kW1 + 0.5 * kW0) * h));
    psi.array() *= mid.array();
    kick(psi, kW1 * h * gamma_at(schedule, t0 + (1.0 - 0.5 * kW1) * h));
    psi.array() *= (k + 1 < nsteps ? full_w1 : half_w1).array();
  }
}

namespace {

TrajectorySample measure(const QuantumState& psi, const HamiltonianView& view,
                         const ClassicalSummary& summary, double t, const Limits& limits) {
  TrajectorySample s;
  s.t = t;
  s.gamma = view.gamma;
  const double norm = psi.norm();
  s.norm_drift = std::abs(norm - 1.0);
  if (!(s.norm_drift <= 1e-6))
    throw NumericalError("norm drift " + std::to_string(s.norm_drift) + " at t = " +
                         std::to_string(t) + " exceeds 1e-6; reduce dt");
  const Spectrum spec = full_spectrum(view, true, limits);
  const double scale = std::max(1.0, std::max(std::abs(spec.eigenvalues[0]),
                                              std::abs(spec.eigenvalues[spec.eigenvalues.size() - 1])));
  const double degeneracy_tol = 1e-12 * scale;
  double fidelity = 0.0;
  for (Eigen::Index nidx = 0; nidx < spec.eigenvalues.size(); ++nidx) {
    if (spec.eigenvalues[nidx] - spec.eigenvalues[0] > degeneracy_tol) break;
    fidelity += std::norm(spec.eigenvectors.col(nidx).cast<Complex>().dot(psi.amplitudes));
  }
  s.fidelity = fidelity;
  s.excitation = std::max(0.0, norm * norm - fidelity);
  s.gap = gap(spec);
  s.residual_energy = residual_energy(psi, view.potential_diag, summary.e_min);
  s.success_prob = success_probability(psi.amplitudes, summary);
  return s;
}

}  // namespace

Trajectory evolve(const IsingInstance& inst, DriverKind driver, const Schedule& schedule,
                  double t_final, const StepControl& control, const Limits& limits) {
  if (!(t_final > 0.0)) throw Error("evolve requires t_final > 0");
  if (!(control.dt > 0.0)) throw Error("evolve requires dt > 0");
  if (control.samples < 1) throw Error("evolve requires at least one sampling interval");
  if (inst.dim() > limits.dense_limit)
    throw CapacityError("sampled evolution needs dense eigensolves: state space 2^" +
                        std::to_string(inst.n_sites) + " exceeds the dense limit");
  const double gamma0 = gamma_at(schedule, 0.0);
  if (!(gamma0 > 0.0)) throw Error("evolve requires Gamma(0) > 0");

  const ClassicalSummary summary = enumerate_classical(inst, limits);
  const Propagator prop(inst, driver, limits);
  HamiltonianView view = make_hamiltonian(inst, driver, gamma0, limits);
  QuantumState psi = initial_ground_state(view, limits);

  Trajectory traj;
  traj.samples.reserve(control.samples + 1);
  traj.samples.push_back(measure(psi, view, summary, 0.0, limits));
  for (int k = 1; k <= control.samples; ++k) {
    const double t_prev = t_final * (k - 1) / control.samples;
    const double t_here = t_final * k / control.samples;
    prop.advance(psi, schedule, t_prev, t_here, control.dt);
    view.gamma = gamma_at(schedule, t_here);
    traj.samples.push_back(measure(psi, view, summary, t_here, limits));
  }
  traj.final_state = std::move(psi);
  traj.final_gamma = gamma_at(schedule, t_final);
  return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,gamma,fidelity,excitation,gap,residual_energy,success_prob,norm_drift\n";
  out.precision(17);
  for (const TrajectorySample& s : trajectory.samples) {
    out << s.t << ',' << s.gamma << ',' << s.fidelity << ',' << s.excitation << ',' << s.gap
        << ',' << s.residual_energy << ',' << s.success_prob << ',' << s.norm_drift << '\n';
  }
}

}  // namespace qa
