#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <random>
#include <vector>

#include "qa/bounds.hpp"
#include "qa/classical.hpp"
#include "qa/dynamics.hpp"
#include "qa/runner.hpp"
#include "qa/schedule.hpp"
#include "qa/spectra.hpp"

namespace qa {

namespace {

struct VerifyFailure : Error {
  using Error::Error;
};

void vcheck(bool cond, const std::string& what) {
  if (!cond) throw VerifyFailure(what);
}

IsingInstance ferromagnet2() {
  IsingInstance inst;
  inst.n_sites = 2;
  inst.terms = {{1.0, {0, 1}}};
  return inst;
}

void check_parse_roundtrip() {
  std::mt19937_64 rng(11);
  const IsingInstance inst = random_instance(5, {{1, 5}, {2, 6}, {3, 2}}, rng);
  const IsingInstance back = parse_instance(format_instance(inst, "roundtrip"));
  vcheck(back.n_sites == inst.n_sites, "n_sites changed in round trip");
  vcheck(back.terms.size() == inst.terms.size(), "term count changed in round trip");
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    vcheck(back.terms[i].sites == inst.terms[i].sites, "sites changed in round trip");
    vcheck(back.terms[i].coefficient == inst.terms[i].coefficient,
           "coefficient changed in round trip");
  }
}

void check_potential_vs_enumeration() {
  std::mt19937_64 rng(12);
  const IsingInstance inst = random_instance(6, {{1, 6}, {2, 8}}, rng);
  const Eigen::VectorXd pot = potential_diagonal(inst);
  const ClassicalSummary sum = enumerate_classical(inst);
  vcheck(pot.minCoeff() == sum.e_min, "e_min differs between the two energy paths");
  vcheck(pot.maxCoeff() == sum.e_max, "e_max differs between the two energy paths");
  for (std::uint64_t b : sum.ground_states)
    vcheck(pot[static_cast<Eigen::Index>(b)] == sum.e_min, "ground state energy mismatch");
}

void check_apply_vs_dense() {
  std::mt19937_64 rng(13);
  const IsingInstance inst = random_instance(5, {{1, 5}, {2, 5}}, rng);
  std::normal_distribution<double> gauss;
  for (DriverKind driver :
       {DriverKind::TransverseField, DriverKind::TransverseFieldPlusPairwise}) {
    const HamiltonianView h = make_hamiltonian(inst, driver, 0.37);
    const Eigen::MatrixXd dense = materialize_dense(h);
    Eigen::VectorXcd v(dense.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = {gauss(rng), gauss(rng)};
    const Eigen::VectorXcd lhs = apply_hamiltonian(h, v);
    const Eigen::VectorXcd rhs = dense * v;
    vcheck((lhs - rhs).norm() <= 1e-12 * rhs.norm(), "matrix-free apply differs from dense");
    vcheck((dense - dense.transpose()).norm() == 0.0, "dense materialization is not symmetric");
  }
}

void check_nonnegative_connected() {
  std::mt19937_64 rng(14);
  const IsingInstance inst = random_instance(4, {{1, 4}, {2, 4}}, rng);
  const ClassicalSummary sum = enumerate_classical(inst);
  const HamiltonianView h = make_hamiltonian(inst, DriverKind::TransverseField, 0.7);
  Eigen::MatrixXd base = -materialize_dense(h);
  base.diagonal().array() += sum.e_max;
  vcheck(base.minCoeff() >= 0.0, "e_max*I - H has a negative entry");
  std::vector<char> seen(base.rows(), 0);
  std::vector<Eigen::Index> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const Eigen::Index i = stack.back();
    stack.pop_back();
    for (Eigen::Index j = 0; j < base.cols(); ++j)
      if (i != j && base(i, j) != 0.0 && !seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
  }
  for (char s : seen) vcheck(s == 1, "single-flip graph is not connected");
}

void check_success_probability() {
  const ClassicalSummary sum = enumerate_classical(ferromagnet2());
  Eigen::VectorXcd uniform = Eigen::VectorXcd::Constant(4, 0.5);
  vcheck(std::abs(success_probability(uniform, sum) - 0.5) < 1e-14,
         "uniform superposition success probability is not 0.5");
}

void check_analytic_spectrum() {
  IsingInstance inst;
  inst.n_sites = 1;
  inst.terms = {{1.0, {0}}};
  for (double g : {0.0, 0.3, 1.0, 2.0}) {
    const Spectrum spec = full_spectrum(make_hamiltonian(inst, DriverKind::TransverseField, g), false);
    const double e = std::sqrt(1.0 + g * g);
    vcheck(std::abs(spec.eigenvalues[0] + e) < 1e-10 && std::abs(spec.eigenvalues[1] - e) < 1e-10,
           "N=1 spectrum differs from the closed form");
  }
}

void check_trace_identity() {
  std::mt19937_64 rng(15);
  const IsingInstance inst = random_instance(5, {{1, 5}, {2, 6}}, rng);
  const HamiltonianView h = make_hamiltonian(inst, DriverKind::TransverseField, 0.9);
  const Spectrum spec = full_spectrum(h, false);
  const double tr = h.potential_diag.sum();
  const double scale = spec.eigenvalues.cwiseAbs().maxCoeff() * spec.eigenvalues.size();
  vcheck(std::abs(spec.eigenvalues.sum() - tr) <= 1e-9 * std::max(1.0, scale),
         "eigenvalue sum does not match the trace");
}

void check_corner_law() {
  std::mt19937_64 rng(16);
  const IsingInstance inst = random_instance(3, {{1, 3}, {2, 3}}, rng);
  const ClassicalSummary sum = enumerate_classical(inst);
  const double g = 0.05;
  {
    const HamiltonianView h = make_hamiltonian(inst, DriverKind::TransverseField, g);
    const PositiveOperatorPower m = positive_power(h, sum.e_max, 3);
    const double law = 6.0 * g * g * g;
    vcheck(std::abs(m.result(0, 7) - law) <= 1e-12 * law, "transverse corner law violated");
  }
  {
    const HamiltonianView h = make_hamiltonian(inst, DriverKind::TransverseFieldPlusPairwise, g);
    const PositiveOperatorPower m = positive_power(h, sum.e_max, 2);
    const double law = 6.0 * g * g;  // (N+1)!/2^q paths for odd N
    vcheck(std::abs(m.result(0, 7) - law) <= 1e-12 * law, "pairwise corner law violated");
  }
}

void check_hopf() {
  const ClassicalSummary sum = enumerate_classical(ferromagnet2());
  for (double g : {0.01, 0.1, 0.5}) {
    const HamiltonianView h = make_hamiltonian(ferromagnet2(), DriverKind::TransverseField, g);
    const HopfCheck hc = hopf_check(positive_power(h, sum.e_max, 2));
    vcheck(hc.pass, "Hopf inequality failed on the 2-spin ferromagnet");
  }
}

void check_kappa_bound() {
  std::mt19937_64 rng(17);
  const IsingInstance inst = random_instance(3, {{1, 3}, {2, 3}}, rng);
  const ClassicalSummary sum = enumerate_classical(inst);
  const double g = 1e-3;
  const HamiltonianView h = make_hamiltonian(inst, DriverKind::TransverseField, g);
  const double kx = kappa_exact(positive_power(h, sum.e_max, 3));
  vcheck(kx <= kappa_bound(sum, 3, g), "kappa_exact exceeds the closed-form bound");
}

void check_gap_bound() {
  std::mt19937_64 rng(18);
  for (int n : {2, 3, 4}) {
    for (int rep = 0; rep < 2; ++rep) {
      const IsingInstance inst = random_instance(n, {{1, n}, {2, n * (n - 1) / 2}}, rng);
      const ClassicalSummary sum = enumerate_classical(inst);
      for (double g : {1e-2, 1e-1}) {
        const HamiltonianView h = make_hamiltonian(inst, DriverKind::TransverseField, g);
        vcheck(gap_bound_check(h, sum).all_enforced_pass(), "gap bound chain failed");
      }
    }
  }
}

void check_schedule_monotone() {
  const std::vector<Schedule> schedules = {
      Schedule::power_law(0.01, 3, 2.0), Schedule::extended_power_law(0.02, 4, 1.5),
      Schedule::linear(2.0, 50.0), Schedule::exponential(1.0, 0.1), Schedule::constant(0.5)};
  std::mt19937_64 rng(19);
  for (const Schedule& s : schedules) {
    for (int k = 0; k < 200; ++k) {
      const double t1 = 100.0 * (uniform_pm1(rng) + 1.0) / 2.0;
      const double t2 = t1 + 10.0 * (uniform_pm1(rng) + 1.0) / 2.0;
      vcheck(gamma_at(s, t2) <= gamma_at(s, t1) + 1e-15, "schedule is not non-increasing");
    }
    const double t_cap = cap_junction_time(s);
    if (std::isfinite(t_cap) && s.kind != Schedule::Kind::Linear)
      vcheck(std::abs(gamma_at(s, t_cap * (1 + 1e-12)) - gamma_at(s, t_cap)) <=
                 1e-9 * gamma_at(s, t_cap),
             "cap junction is discontinuous");
  }
}

void check_calibration_closure() {
  const double a = 0.25, delta = 0.1;
  const int n = 2;
  const double alpha = calibrate_alpha({delta}, a, n);
  const Schedule s = Schedule::power_law(alpha, n, 2.0);
  const double t_cap = cap_junction_time(s);
  for (double f : {2.0, 10.0, 100.0}) {
    const double env = adiabaticity_envelope(s, a, n, f * t_cap);
    vcheck(std::abs(env - delta) <= 1e-10 * delta, "calibrated envelope is not delta");
  }
}

void check_stationary_state() {
  const Schedule s = Schedule::constant(0.7);
  const Trajectory traj = evolve(ferromagnet2(), DriverKind::TransverseField, s, 5.0, {0.01, 10});
  for (const TrajectorySample& smp : traj.samples) {
    vcheck(smp.fidelity >= 1.0 - 1e-8, "stationary ground state lost fidelity");
    vcheck(smp.norm_drift <= 1e-8, "norm drift on a stationary run");
  }
}

void check_error_paths() {
  bool threw = false;
  try {
    parse_instance("n 3\nterm 0.5 0 0 1\n");
  } catch (const ParseError&) {
    threw = true;
  }
  vcheck(threw, "duplicate-site instance was not rejected");
  threw = false;
  try {
    Limits tiny;
    tiny.dense_limit = 2;
    materialize_dense(make_hamiltonian(ferromagnet2(), DriverKind::TransverseField, 0.1), tiny);
  } catch (const CapacityError&) {
    threw = true;
  }
  vcheck(threw, "reduced dense budget was not enforced");
}

}  // namespace

int run_verify(std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<void()>>> checks = {
      {"instance parse/format round trip", check_parse_roundtrip},
      {"potential diagonal matches enumeration extremes", check_potential_vs_enumeration},
      {"matrix-free apply matches dense materialization", check_apply_vs_dense},
      {"e_max*I - H nonnegative and irreducible", check_nonnegative_connected},
      {"ground-manifold success probability", check_success_probability},
      {"N=1 analytic spectrum", check_analytic_spectrum},
      {"eigenvalue sum equals trace", check_trace_identity},
      {"antipodal corner element law", check_corner_law},
      {"Hopf inequality", check_hopf},
      {"kappa_exact below closed-form bound", check_kappa_bound},
      {"gap lower bound chain", check_gap_bound},
      {"schedule monotonicity and cap continuity", check_schedule_monotone},
      {"calibration closure (envelope == delta)", check_calibration_closure},
      {"stationary ground state under constant schedule", check_stationary_state},
      {"parse and capacity error paths", check_error_paths},
  };
  int failures = 0;
  for (const auto& [name, fn] : checks) {
    try {
      fn();
      out << "[pass] " << name << "\n";
    } catch (const std::exception& e) {
      ++failures;
      out << "[FAIL] " << name << ": " << e.what() << "\n";
    }
  }
  out << (failures == 0 ? "verify: all checks passed\n"
                        : "verify: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace qa
