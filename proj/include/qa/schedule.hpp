#pragma once

#include <limits>
#include <string>
#include <utility>

#include "qa/errors.hpp"

namespace qa {

/// Annealing schedule Gamma(t): continuous, non-increasing for t >= 0.
///
/// PowerLaw holds the cap gamma_cap until t_cap = gamma_cap^-(2N-1) / alpha and
/// then follows (alpha t)^(-1/(2N-1)). ExtendedPowerLaw is the same with
/// exponent -1/(N-1), for the driver with pairwise transverse terms.
struct Schedule {
  enum class Kind { PowerLaw, ExtendedPowerLaw, Linear, Exponential, Constant };

  Kind kind = Kind::Constant;
  double alpha = 0.0;        // PowerLaw / ExtendedPowerLaw
  int exponent_n = 0;        // PowerLaw / ExtendedPowerLaw: the N in the exponent
  double gamma_cap = 0.0;    // PowerLaw / ExtendedPowerLaw
  double gamma_start = 0.0;  // Linear / Exponential
  double t_final = 0.0;      // Linear: time at which the ramp reaches 0
  double rate = 0.0;         // Exponential
  double gamma_value = 0.0;  // Constant

  static Schedule power_law(double alpha, int n, double gamma_cap);
  static Schedule extended_power_law(double alpha, int n, double gamma_cap);
  static Schedule linear(double gamma_start, double t_final);
  static Schedule exponential(double gamma_start, double rate);
  static Schedule constant(double gamma);
};

const char* schedule_kind_name(Schedule::Kind kind);

double gamma_at(const Schedule& s, double t);

/// Analytic derivative. At the exact cap-junction time the right-side value is
/// returned; use dgamma_dt_two_sided to see both.
double dgamma_dt(const Schedule& s, double t);
std::pair<double, double> dgamma_dt_two_sided(const Schedule& s, double t);

/// Time at which the schedule leaves its initial plateau (PowerLaw kinds) or
/// reaches zero (Linear); +infinity for kinds without a junction.
double cap_junction_time(const Schedule& s);

struct AdiabaticityTarget {
  double delta = 0.0;  // in (0, 1)
};

/// Prefactor alpha = delta (2N-1) A^2 / N: with Gamma(t) = (alpha t)^(-1/(2N-1))
/// substituted, the envelope -N/(A^2 Gamma^2N) dGamma/dt is the constant delta.
double calibrate_alpha(const AdiabaticityTarget& target, double a, int n);

/// Same calibration for the pairwise driver: term count C = N + N(N-1)/2, gap
/// exponent ceil(N/2), schedule exponent -1/(N-1). The envelope is constant
/// past the cap for even N; for odd N it equals delta at the Gamma = 1 crossing.
double calibrate_alpha_extended(const AdiabaticityTarget& target, double a_pairwise, int n);

/// The excitation-estimate envelope -N/(A^2 Gamma(t)^2N) dGamma/dt.
/// Returns +infinity when Gamma(t) has reached 0 (the bound diverges).
double adiabaticity_envelope(const Schedule& s, double a, int n, double t);

/// Pairwise-driver envelope -C/(A'^2 Gamma(t)^2q) dGamma/dt with q = ceil(N/2).
double adiabaticity_envelope_extended(const Schedule& s, double a_pairwise, int n, double t);

}  // namespace qa
