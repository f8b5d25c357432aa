#include "qa/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qa/spectra.hpp"

namespace qa {

namespace {

constexpr double kKappaRegime = 1e-2;       // gamma range where kappa_exact <= kappa_bound is enforced
constexpr double kAsymptoticRegime = 1e-1;  // gamma range for min-element and gap-bound enforcement
constexpr double kRelTol = 1e-10;
constexpr double kCornerRelTol = 1e-12;
constexpr double kGapSlack = 1e-12;

double log_delta_e(const ClassicalSummary& summary, double shift) {
  return std::log(summary.e_max - summary.e_min + shift);
}

/// Exact double factorial product 1*2*...*n (n small enough that this is exact).
double factorial_exact(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

PositiveOperatorPower positive_power(const HamiltonianView& h, double e_max, int p,
                                     const Limits& limits) {
  if (!(h.gamma > 0.0)) throw Error("positive_power requires gamma > 0");
  if (p < 1) throw Error("positive_power requires exponent p >= 1");
  const Eigen::MatrixXd dense = materialize_dense(h, limits);
  Eigen::MatrixXd base = -dense;
  base.diagonal().array() += e_max;
  if (base.minCoeff() < 0.0)
    throw NumericalError("base matrix has negative entries: e_max is below the true classical maximum");
  Eigen::MatrixXd m = base;
  for (int k = 1; k < p; ++k) m = (m * base).eval();
  PositiveOperatorPower out;
  out.result = std::move(m);
  out.exponent = p;
  out.e_max = e_max;
  out.gamma = h.gamma;
  out.min_element = out.result.minCoeff();
  out.max_element = out.result.maxCoeff();
  out.strictly_positive = out.min_element > 0.0;
  return out;
}

double kappa_exact(const Eigen::MatrixXd& m) {
  if (m.size() == 0 || m.minCoeff() <= 0.0)
    throw NumericalError("kappa is defined only for strictly positive matrices");
  double kappa = 1.0;
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const double cmax = m.col(k).maxCoeff();
    const double cmin = m.col(k).minCoeff();
    kappa = std::max(kappa, cmax / cmin);
  }
  return kappa;
}

double kappa_exact(const PositiveOperatorPower& m) {
  if (!m.strictly_positive)
    throw NumericalError("kappa is defined only for strictly positive matrices");
  return kappa_exact(m.result);
}

double kappa_bound(const ClassicalSummary& summary, int n, double gamma) {
  if (!(gamma > 0.0)) throw Error("kappa_bound requires gamma > 0");
  return std::exp(n * log_delta_e(summary, n) - std::lgamma(n + 1.0) - n * std::log(gamma));
}

double log_pairwise_path_count(int n) {
  const int q = (n + 1) / 2;
  const int top = (n % 2 == 0) ? n : n + 1;
  return std::lgamma(top + 1.0) - q * std::log(2.0);
}

double kappa_bound_pairwise(const ClassicalSummary& summary, int n, double gamma) {
  if (!(gamma > 0.0)) throw Error("kappa_bound_pairwise requires gamma > 0");
  const int q = (n + 1) / 2;
  const double count = driver_term_count(DriverKind::TransverseFieldPlusPairwise, n);
  return std::exp(q * log_delta_e(summary, count) - log_pairwise_path_count(n) -
                  q * std::log(gamma));
}

HopfCheck hopf_check(const Eigen::MatrixXd& m) {
  HopfCheck out;
  out.kappa = kappa_exact(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed on the positive matrix power");
  const Eigen::VectorXd& eigs = solver.eigenvalues();
  const Eigen::Index last = eigs.size() - 1;
  out.perron_root = eigs[last];
  const double bound = (out.kappa - 1.0) / (out.kappa + 1.0) * out.perron_root;
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < last; ++i) margin = std::min(margin, bound - std::abs(eigs[i]));
  out.margin = margin;
  out.pass = !(margin < -kRelTol * out.perron_root);
  return out;
}

HopfCheck hopf_check(const PositiveOperatorPower& m) {
  if (!m.strictly_positive)
    throw NumericalError("Hopf check is defined only for strictly positive matrices");
  return hopf_check(m.result);
}

double coefficient_a(const ClassicalSummary& summary, double eps0, int n) {
  if (!(eps0 <= summary.e_max)) throw Error("coefficient_a requires eps0 <= e_max");
  return std::exp(std::log(2.0) + std::log(summary.e_max - eps0) + std::lgamma(n + 1.0) -
                  std::log(double(n)) - n * log_delta_e(summary, n));
}

double coefficient_a_stirling(const ClassicalSummary& summary, double eps0, int n) {
  if (!(eps0 <= summary.e_max)) throw Error("coefficient_a_stirling requires eps0 <= e_max");
  const double nn = n;
  return std::exp(std::log(2.0) + 0.5 * std::log(2.0 * M_PI * nn) +
                  std::log(summary.e_max - eps0) - std::log(nn) - nn +
                  nn * (std::log(nn) - log_delta_e(summary, n)));
}

double coefficient_a_pairwise(const ClassicalSummary& summary, double eps0, int n) {
  if (!(eps0 <= summary.e_max)) throw Error("coefficient_a_pairwise requires eps0 <= e_max");
  const int q = (n + 1) / 2;
  const double count = driver_term_count(DriverKind::TransverseFieldPlusPairwise, n);
  return std::exp(std::log(2.0) + std::log(summary.e_max - eps0) + log_pairwise_path_count(n) -
                  std::log(double(q)) - q * log_delta_e(summary, count));
}

bool BoundsReport::all_enforced_pass() const {
  for (const BoundCheck& c : checks)
    if (c.enforced && !c.pass) return false;
  return true;
}

const BoundCheck& BoundsReport::check(const std::string& name) const {
  for (const BoundCheck& c : checks)
    if (c.name == name) return c;
  throw Error("no bound check named '" + name + "'");
}

BoundsReport gap_bound_check(const HamiltonianView& h, const ClassicalSummary& summary,
                             const Limits& limits) {
  if (!(h.gamma > 0.0)) throw Error("gap_bound_check requires gamma > 0");
  if (h.gamma > 1.0)
    throw Error("gap_bound_check requires gamma <= 1 (the max-element bound assumes it)");
  const int n = h.n_sites;
  const double gamma = h.gamma;
  const bool transverse = h.driver == DriverKind::TransverseField;
  const int p_default = transverse ? n : (n + 1) / 2;

  BoundsReport rep;
  rep.n_sites = n;
  rep.gamma = gamma;
  rep.driver = h.driver;
  rep.exponent_default = p_default;
  rep.e_min = summary.e_min;
  rep.e_max = summary.e_max;

  const Spectrum spec = full_spectrum(h, false, limits);
  rep.eps0 = spec.eigenvalues[0];
  rep.eps1 = spec.eigenvalues.size() > 1 ? spec.eigenvalues[1] : spec.eigenvalues[0];
  rep.gap_true = rep.eps1 - rep.eps0;

  PositiveOperatorPower m = positive_power(h, summary.e_max, p_default, limits);
  rep.strict_positive_at_default = m.strictly_positive;
  int p = p_default;
  while (!m.strictly_positive && p < p_default + 2) {
    ++p;
    m = positive_power(h, summary.e_max, p, limits);
  }
  if (!m.strictly_positive)
    throw NumericalError("matrix power is not strictly positive up to exponent " +
                         std::to_string(p) + "; the instance has adjacent maximal configurations");
  const bool fallback = p != p_default;
  rep.exponent_p = p;
  rep.min_element = m.min_element;
  rep.max_element = m.max_element;

  const auto dim = static_cast<Eigen::Index>(h.dim());
  rep.opposite_corner = m.result(0, dim - 1);
  const int q = (n + 1) / 2;
  if (!fallback) {
    if (transverse) {
      rep.corner_law = factorial_exact(n) * std::pow(gamma, n);
    } else {
      const double c = std::ldexp(factorial_exact(n % 2 == 0 ? n : n + 1), -q);
      rep.corner_law = c * std::pow(gamma, q);
    }
  } else {
    rep.corner_law = std::numeric_limits<double>::quiet_NaN();
  }

  rep.kappa_exact = kappa_exact(m);
  rep.kappa_bound =
      transverse ? kappa_bound(summary, n, gamma) : kappa_bound_pairwise(summary, n, gamma);

  rep.coefficient_a = transverse ? coefficient_a(summary, rep.eps0, n)
                                 : coefficient_a_pairwise(summary, rep.eps0, n);
  rep.coefficient_a_stirling = coefficient_a_stirling(summary, rep.eps0, n);
  rep.gap_lower = rep.coefficient_a * std::pow(gamma, p_default);
  // exact chain: gap >= (1 - ((kb-1)/(kb+1))^(1/p)) (e_max - eps0)
  const double shrink =
      std::isinf(rep.kappa_bound)
          ? 0.0
          : -std::expm1(std::log1p(-2.0 / (rep.kappa_bound + 1.0)) / p_default);
  rep.gap_lower_exact = shrink * (summary.e_max - rep.eps0);

  const HopfCheck hopf = hopf_check(m);
  rep.checks.push_back({"hopf", hopf.pass, hopf.margin, true});

  {
    // |e_max - eps_n|^p <= ((kappa-1)/(kappa+1)) (e_max - eps0)^p, log domain
    const double log_r = std::log1p(-2.0 / (rep.kappa_exact + 1.0));
    const double rhs = log_r + p * std::log(summary.e_max - rep.eps0);
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < spec.eigenvalues.size(); ++i) {
      const double lhs = p * std::log(std::abs(summary.e_max - spec.eigenvalues[i]));
      margin = std::min(margin, rhs - lhs);
    }
    rep.checks.push_back({"spectral_confinement", !(margin < -kRelTol), margin, true});
  }

  {
    const double margin = std::log(rep.kappa_bound) - std::log(rep.kappa_exact);
    rep.checks.push_back(
        {"kappa_le_bound", !(margin < 0.0), margin, !fallback && gamma <= kKappaRegime});
  }

  if (!fallback) {
    const double corner_err = std::abs(rep.opposite_corner - rep.corner_law) / rep.corner_law;
    rep.checks.push_back(
        {"corner_law", corner_err <= kCornerRelTol, kCornerRelTol - corner_err, true});
    const double min_err = std::abs(rep.min_element - rep.opposite_corner) / rep.opposite_corner;
    rep.checks.push_back({"min_element_is_corner", min_err <= kCornerRelTol,
                          kCornerRelTol - min_err, gamma <= kAsymptoticRegime});
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.checks.push_back({"corner_law", true, nan, false});
    rep.checks.push_back({"min_element_is_corner", true, nan, false});
  }

  {
    const double count = driver_term_count(h.driver, n);
    const double margin = p * log_delta_e(summary, count) - std::log(rep.max_element);
    rep.checks.push_back({"max_element_bound", !(margin < -kRelTol), margin, true});
  }

  rep.checks.push_back({"gap_ge_lower", rep.gap_true >= rep.gap_lower - kGapSlack,
                        rep.gap_true - rep.gap_lower, gamma <= kAsymptoticRegime});
  rep.checks.push_back({"gap_ge_lower_exact", rep.gap_true >= rep.gap_lower_exact - kGapSlack,
                        rep.gap_true - rep.gap_lower_exact, gamma <= kAsymptoticRegime});
  return rep;
}

nlohmann::json to_flat_json(const BoundsReport& report) {
  nlohmann::json j;
  j["n_sites"] = report.n_sites;
  j["gamma"] = report.gamma;
  j["driver"] = driver_name(report.driver);
  j["exponent_p"] = report.exponent_p;
  j["exponent_default"] = report.exponent_default;
  j["strict_positive_at_default"] = report.strict_positive_at_default;
  j["e_min"] = report.e_min;
  j["e_max"] = report.e_max;
  j["eps0"] = report.eps0;
  j["eps1"] = report.eps1;
  j["kappa_exact"] = report.kappa_exact;
  j["kappa_bound"] = report.kappa_bound;
  j["min_element"] = report.min_element;
  j["max_element"] = report.max_element;
  j["opposite_corner"] = report.opposite_corner;
  j["corner_law"] = report.corner_law;
  j["coefficient_a"] = report.coefficient_a;
  j["coefficient_a_stirling"] = report.coefficient_a_stirling;
  j["gap_true"] = report.gap_true;
  j["gap_lower"] = report.gap_lower;
  j["gap_lower_exact"] = report.gap_lower_exact;
  j["all_pass"] = report.all_enforced_pass();
  for (const BoundCheck& c : report.checks) {
    j["pass_" + c.name] = c.pass;
    j["margin_" + c.name] = c.margin;
    j["enforced_" + c.name] = c.enforced;
  }
  return j;
}

}  // namespace qa
