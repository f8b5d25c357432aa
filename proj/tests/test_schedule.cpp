#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qa/schedule.hpp"

using namespace qa;

namespace {

const std::vector<Schedule> kAllKinds = {
    Schedule::power_law(0.01, 3, 2.0), Schedule::extended_power_law(0.02, 4, 1.5),
    Schedule::linear(2.0, 50.0), Schedule::exponential(1.0, 0.1), Schedule::constant(0.5)};

}  // namespace

TEST_CASE("gamma_at closed-form spot values") {
  const Schedule p2 = Schedule::power_law(1.0, 2, 10.0);
  CHECK(gamma_at(p2, 8.0) == doctest::Approx(0.5).epsilon(1e-14));  // 8^(-1/3)
  CHECK(gamma_at(p2, 0.0) == 10.0);                                 // cap engaged
  CHECK(gamma_at(p2, 1e-30) == 10.0);

  const Schedule e3 = Schedule::extended_power_law(1.0, 3, 10.0);
  CHECK(gamma_at(e3, 4.0) == doctest::Approx(0.5).epsilon(1e-14));  // 4^(-1/2)

  const Schedule lin = Schedule::linear(2.0, 4.0);
  CHECK(gamma_at(lin, 0.0) == 2.0);
  CHECK(gamma_at(lin, 2.0) == 1.0);
  CHECK(gamma_at(lin, 4.0) == 0.0);
  CHECK(gamma_at(lin, 9.0) == 0.0);

  CHECK(gamma_at(Schedule::exponential(1.0, 0.5), 2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(gamma_at(Schedule::constant(0.7), 123.0) == 0.7);
}

TEST_CASE("cap junction is continuous") {
  for (const Schedule& s : {Schedule::power_law(0.37, 2, 1.9), Schedule::extended_power_law(2.5, 5, 0.8)}) {
    const double t_cap = cap_junction_time(s);
    CHECK(std::abs(gamma_at(s, t_cap * (1.0 + 1e-13)) - gamma_at(s, t_cap)) <=
          1e-12 * gamma_at(s, t_cap));
  }
}

TEST_CASE("gamma is non-increasing for every kind") {
  std::mt19937_64 rng(501);
  for (const Schedule& s : kAllKinds) {
    for (int k = 0; k < 500; ++k) {
      const double t1 = 60.0 * (uniform_pm1(rng) + 1.0) / 2.0;
      const double dt = 30.0 * (uniform_pm1(rng) + 1.0) / 2.0;
      CHECK(gamma_at(s, t1 + dt) <= gamma_at(s, t1) + 1e-15);
    }
    CHECK(dgamma_dt(s, 17.0) <= 0.0);
  }
}

TEST_CASE("dgamma_dt closed forms") {
  CHECK(dgamma_dt(Schedule::constant(0.4), 3.0) == 0.0);
  const Schedule p2 = Schedule::power_law(1.0, 2, 10.0);
  CHECK(dgamma_dt(p2, 8.0) ==
        doctest::Approx(-(1.0 / 3.0) * std::pow(8.0, -4.0 / 3.0)).epsilon(1e-13));
  const Schedule lin = Schedule::linear(2.0, 4.0);
  CHECK(dgamma_dt(lin, 1.0) == -0.5);
  CHECK(dgamma_dt(lin, 5.0) == 0.0);
}

TEST_CASE("dgamma_dt matches a central finite difference") {
  std::mt19937_64 rng(502);
  for (const Schedule& s : kAllKinds) {
    const double t_cap = cap_junction_time(s);
    for (int k = 0; k < 60; ++k) {
      const double t = 0.5 + 60.0 * (uniform_pm1(rng) + 1.0) / 2.0;
      if (std::isfinite(t_cap) && std::abs(t - t_cap) < 0.05 * t_cap) continue;  // skip the kink
      const double step = 1e-6 * t;
      const double numeric = (gamma_at(s, t + step) - gamma_at(s, t - step)) / (2.0 * step);
      const double analytic = dgamma_dt(s, t);
      CHECK(std::abs(numeric - analytic) <= 1e-6 * std::max(1e-12, std::abs(analytic)));
    }
  }
}

TEST_CASE("two-sided derivative at the cap junction") {
  const Schedule s = Schedule::power_law(0.5, 2, 1.5);
  const double t_cap = cap_junction_time(s);
  const auto [left, right] = dgamma_dt_two_sided(s, t_cap);
  CHECK(left == 0.0);
  CHECK(right < 0.0);
  CHECK(dgamma_dt(s, t_cap) == right);
}

TEST_CASE("calibrate_alpha closed form and linearity in delta") {
  CHECK(calibrate_alpha({0.1}, 0.25, 2) == doctest::Approx(9.375e-3).epsilon(1e-14));
  const double a1 = calibrate_alpha({0.2}, 0.7, 4);
  const double a2 = calibrate_alpha({0.1}, 0.7, 4);
  CHECK(a1 == doctest::Approx(2.0 * a2).epsilon(1e-14));
  CHECK_THROWS_AS(calibrate_alpha({1.5}, 0.25, 2), Error);
  CHECK_THROWS_AS(calibrate_alpha({0.1}, -1.0, 2), Error);
}

TEST_CASE("calibration closure: the envelope is exactly delta past the cap") {
  for (int n : {1, 2, 3, 5}) {
    const double a = 0.31;
    const double delta = 0.07;
    const double alpha = calibrate_alpha({delta}, a, n);
    const Schedule s = Schedule::power_law(alpha, n, 200.0);  // high cap so t in {1,10,100} is past it
    const double t_cap = cap_junction_time(s);
    REQUIRE(t_cap < 1.0);
    for (double t : {1.0, 10.0, 100.0})
      CHECK(adiabaticity_envelope(s, a, n, t) == doctest::Approx(delta).epsilon(1e-10));
    // before the junction the driver is frozen at the cap, so the envelope vanishes
    CHECK(adiabaticity_envelope(s, a, n, 0.5 * t_cap) == 0.0);
  }
}

TEST_CASE("extended calibration closure for even N") {
  const int n = 4;
  const double a = 0.12;
  const double delta = 0.05;
  const double alpha = calibrate_alpha_extended({delta}, a, n);
  const Schedule s = Schedule::extended_power_law(alpha, n, 30.0);
  REQUIRE(cap_junction_time(s) < 1.0);
  for (double t : {1.0, 10.0, 100.0})
    CHECK(adiabaticity_envelope_extended(s, a, n, t) == doctest::Approx(delta).epsilon(1e-10));
}

TEST_CASE("envelope of a constant schedule vanishes; a linear ramp diverges") {
  CHECK(adiabaticity_envelope(Schedule::constant(0.8), 0.3, 3, 5.0) == 0.0);
  const Schedule lin = Schedule::linear(1.0, 100.0);
  const double near = adiabaticity_envelope(lin, 0.3, 3, 99.999);
  const double nearer = adiabaticity_envelope(lin, 0.3, 3, 99.999999);
  CHECK(near > 1e6);
  CHECK(nearer > near);
  CHECK(std::isinf(adiabaticity_envelope(lin, 0.3, 3, 150.0)));  // Gamma reached 0
}

TEST_CASE("schedule factories validate their arguments") {
  CHECK_THROWS_AS(Schedule::power_law(-1.0, 2, 1.0), Error);
  CHECK_THROWS_AS(Schedule::power_law(1.0, 0, 1.0), Error);
  CHECK_THROWS_AS(Schedule::extended_power_law(1.0, 1, 1.0), Error);
  CHECK_THROWS_AS(Schedule::linear(0.0, 1.0), Error);
  CHECK_THROWS_AS(Schedule::exponential(1.0, 0.0), Error);
  CHECK_THROWS_AS(Schedule::constant(-0.1), Error);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Schedule::constant(nan), Error);
}
