#include "qa/schedule.hpp"

#include <cmath>

#include "qa/ising.hpp"

namespace qa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* what) {
  if (!cond) throw Error(what);
}

double power_exponent(const Schedule& s) {
  return s.kind == Schedule::Kind::PowerLaw ? -1.0 / (2.0 * s.exponent_n - 1.0)
                                            : -1.0 / (s.exponent_n - 1.0);
}

}  // namespace

Schedule Schedule::power_law(double alpha, int n, double gamma_cap) {
  require(alpha > 0 && std::isfinite(alpha), "power_law: alpha must be positive");
  require(n >= 1, "power_law: n must be >= 1");
  require(gamma_cap > 0 && std::isfinite(gamma_cap), "power_law: gamma_cap must be positive");
  Schedule s;
  s.kind = Kind::PowerLaw;
  s.alpha = alpha;
  s.exponent_n = n;
  s.gamma_cap = gamma_cap;
  return s;
}

Schedule Schedule::extended_power_law(double alpha, int n, double gamma_cap) {
  require(alpha > 0 && std::isfinite(alpha), "extended_power_law: alpha must be positive");
  require(n >= 2, "extended_power_law: n must be >= 2");
  require(gamma_cap > 0 && std::isfinite(gamma_cap), "extended_power_law: gamma_cap must be positive");
  Schedule s;
  s.kind = Kind::ExtendedPowerLaw;
  s.alpha = alpha;
  s.exponent_n = n;
  s.gamma_cap = gamma_cap;
  return s;
}

Schedule Schedule::linear(double gamma_start, double t_final) {
  require(gamma_start > 0 && std::isfinite(gamma_start), "linear: gamma_start must be positive");
  require(t_final > 0 && std::isfinite(t_final), "linear: t_final must be positive");
  Schedule s;
  s.kind = Kind::Linear;
  s.gamma_start = gamma_start;
  s.t_final = t_final;
  return s;
}

Schedule Schedule::exponential(double gamma_start, double rate) {
  require(gamma_start > 0 && std::isfinite(gamma_start), "exponential: gamma_start must be positive");
  require(rate > 0 && std::isfinite(rate), "exponential: rate must be positive");
  Schedule s;
  s.kind = Kind::Exponential;
  s.gamma_start = gamma_start;
  s.rate = rate;
  return s;
}

Schedule Schedule::constant(double gamma) {
  require(gamma >= 0 && std::isfinite(gamma), "constant: gamma must be nonnegative");
  Schedule s;
  s.kind = Kind::Constant;
  s.gamma_value = gamma;
  return s;
}

const char* schedule_kind_name(Schedule::Kind kind) {
  switch (kind) {
    case Schedule::Kind::PowerLaw: return "power";
    case Schedule::Kind::ExtendedPowerLaw: return "extended";
    case Schedule::Kind::Linear: return "linear";
    case Schedule::Kind::Exponential: return "exponential";
    case Schedule::Kind::Constant: return "constant";
  }
  return "?";
}

double cap_junction_time(const Schedule& s) {
  switch (s.kind) {
    case Schedule::Kind::PowerLaw:
      return std::pow(s.gamma_cap, -(2.0 * s.exponent_n - 1.0)) / s.alpha;
    case Schedule::Kind::ExtendedPowerLaw:
      return std::pow(s.gamma_cap, -(s.exponent_n - 1.0)) / s.alpha;
    case Schedule::Kind::Linear:
      return s.t_final;
    default:
      return kInf;
  }
}

double gamma_at(const Schedule& s, double t) {
  switch (s.kind) {
    case Schedule::Kind::PowerLaw:
    case Schedule::Kind::ExtendedPowerLaw: {
      if (t <= cap_junction_time(s)) return s.gamma_cap;
      return std::pow(s.alpha * t, power_exponent(s));
    }
    case Schedule::Kind::Linear:
      if (t <= 0) return s.gamma_start;
      if (t >= s.t_final) return 0.0;
      return s.gamma_start * (1.0 - t / s.t_final);
    case Schedule::Kind::Exponential:
      return s.gamma_start * std::exp(-s.rate * std::max(t, 0.0));
    case Schedule::Kind::Constant:
      return s.gamma_value;
  }
  return 0.0;
}

std::pair<double, double> dgamma_dt_two_sided(const Schedule& s, double t) {
  switch (s.kind) {
    case Schedule::Kind::PowerLaw:
    case Schedule::Kind::ExtendedPowerLaw: {
      const double t_cap = cap_junction_time(s);
      const double e = power_exponent(s);
      const double slope = t > 0 ? e * s.alpha * std::pow(s.alpha * t, e - 1.0) : 0.0;
      return {t <= t_cap ? 0.0 : slope, t < t_cap ? 0.0 : slope};
    }
    case Schedule::Kind::Linear: {
      const double slope = -s.gamma_start / s.t_final;
      const double left = (t > 0 && t <= s.t_final) ? slope : 0.0;
      const double right = (t >= 0 && t < s.t_final) ? slope : 0.0;
      return {left, right};
    }
    case Schedule::Kind::Exponential: {
      const double d = -s.rate * gamma_at(s, t);
      return {d, d};
    }
    case Schedule::Kind::Constant:
      return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

double dgamma_dt(const Schedule& s, double t) { return dgamma_dt_two_sided(s, t).second; }

double calibrate_alpha(const AdiabaticityTarget& target, double a, int n) {
  require(target.delta > 0 && target.delta < 1, "calibrate_alpha: delta must be in (0, 1)");
  require(a > 0 && std::isfinite(a), "calibrate_alpha: coefficient A must be positive");
  require(n >= 1, "calibrate_alpha: n must be >= 1");
  return target.delta * (2.0 * n - 1.0) * a * a / n;
}

double calibrate_alpha_extended(const AdiabaticityTarget& target, double a_pairwise, int n) {
  require(target.delta > 0 && target.delta < 1, "calibrate_alpha_extended: delta must be in (0, 1)");
  require(a_pairwise > 0 && std::isfinite(a_pairwise),
          "calibrate_alpha_extended: coefficient A must be positive");
  require(n >= 2, "calibrate_alpha_extended: n must be >= 2");
  const double count = driver_term_count(DriverKind::TransverseFieldPlusPairwise, n);
  return target.delta * (n - 1.0) * a_pairwise * a_pairwise / count;
}

namespace {

double envelope_impl(const Schedule& s, double a, double count, double gap_exponent, double t) {
  const double g = gamma_at(s, t);
  const double d = dgamma_dt(s, t);
  if (!(g > 0.0)) return kInf;  // the gap bound has collapsed
  return -count * d / (a * a * std::pow(g, 2.0 * gap_exponent));
}

}  // namespace

double adiabaticity_envelope(const Schedule& s, double a, int n, double t) {
  return envelope_impl(s, a, n, n, t);
}

double adiabaticity_envelope_extended(const Schedule& s, double a_pairwise, int n, double t) {
  const int q = (n + 1) / 2;
  const double count = driver_term_count(DriverKind::TransverseFieldPlusPairwise, n);
  return envelope_impl(s, a_pairwise, count, q, t);
}

}  // namespace qa
