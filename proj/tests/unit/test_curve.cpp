#include <cmath>
#include <numbers>

#include "doctest.h"
#include "muskat/config.hpp"
#include "muskat/curve.hpp"
#include "muskat/errors.hpp"
#include "muskat/runner.hpp"
#include "muskat/spectral.hpp"
#include "test_support.hpp"

using namespace muskat;
using muskat::testing::kTwoPi;
using muskat::testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

InterfaceCurve shifted(const InterfaceCurve& c, double dx, double dy) {
  std::vector<double> z1 = c.z1, z2 = c.z2;
  for (double& v : z1) v += dx;
  for (double& v : z2) v += dy;
  return InterfaceCurve(c.grid, z1, z2, c.time, c.rho_bar);
}

/// Mirror image x -> -x, traversed with alpha -> -alpha so the orientation is kept.
InterfaceCurve mirrored(const InterfaceCurve& c) {
  const std::size_t n = c.grid.n_points();
  std::vector<double> z1(n), z2(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t m = (n - j) % n;
    // z1(-a) = z1(L - a) - L keeps z1 - alpha periodic.
    z1[j] = j == 0 ? -c.z1[0] : c.grid.length() - c.z1[m];
    z2[j] = c.z2[m];
  }
  return InterfaceCurve(c.grid, z1, z2, c.time, c.rho_bar);
}

SimConfig curve_config(double steepness) {
  SimConfig c;
  c.mode = Mode::Curve;
  c.n_points = 256;
  c.t_final = 0.3;
  c.report_interval = 0.002;
  c.snapshot_interval = 0.05;
  c.initial_data.kind = InitialKind::TurningProfile;
  c.initial_data.steepness = steepness;
  c.initial_data.amplitude = 1.0;
  return c;
}

}  // namespace

TEST_CASE("curve construction") {
  const PeriodicGrid g(32, kTwoPi);
  CHECK_THROWS_AS(InterfaceCurve(g, std::vector<double>(31), std::vector<double>(32), 0, 1), InvalidArgument);
  CHECK_THROWS_AS(InterfaceCurve::flat(g, -1.0), InvalidArgument);
  const InterfaceCurve flat = InterfaceCurve::flat(g, 1.0);
  CHECK(flat.horizontal_perturbation().max_abs() < 1e-15);
}

TEST_CASE("flat curve is a fixed point") {
  const InterfaceCurve flat = InterfaceCurve::flat(PeriodicGrid(64, kTwoPi), kPi);
  const CurveVelocity v = curve_velocity(flat, {});
  CHECK(v.v1.max_abs() < 1e-12);
  CHECK(v.v2.max_abs() < 1e-12);
  CHECK(turning_indicator(flat) == doctest::Approx(1.0));
  CHECK(v.chord_arc_min == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("graph curves reproduce the graph flux") {
  const PeriodicGrid g(256, kTwoPi);
  const RealField f = random_band_limited(g, 8, 0.3, 4);
  const CurveVelocity v = curve_velocity(InterfaceCurve::from_graph(f, 0.0, kPi), {});
  const RealField graph = flux_arctan(GraphState(f, 0.0, kPi), {});
  CHECK(v.v1.max_abs() < 1e-12);
  CHECK(max_abs_diff(v.v2, graph) < 1e-4);
  CHECK(max_abs_diff(v.v2, flux_rational(GraphState(f, 0.0, kPi), {})) < 1e-12);
}

TEST_CASE("velocity is invariant under translations") {
  const InterfaceCurve c = turning_profile(PeriodicGrid(128, kTwoPi), 0.7, 0.5, kPi);
  const CurveVelocity v = curve_velocity(c, {});
  const CurveVelocity w = curve_velocity(shifted(c, 0.37, -1.2), {});
  CHECK(max_abs_diff(v.v1, w.v1) < 1e-10);
  CHECK(max_abs_diff(v.v2, w.v2) < 1e-10);
}

TEST_CASE("turning indicator") {
  const PeriodicGrid g(64, kTwoPi);
  const RealField f = random_band_limited(g, 4, 0.5, 1);
  CHECK(turning_indicator(InterfaceCurve::from_graph(f, 0, kPi)) > 0.0);
  // z1 = alpha - 1.5 sin(alpha) has min z1' = -0.5 at alpha = 0.
  const RealField alpha = RealField::sample(g, [](double a) { return a; });
  std::vector<double> z1(64), z2(64, 0.0);
  for (std::size_t j = 0; j < 64; ++j) z1[j] = alpha[j] - 1.5 * std::sin(alpha[j]);
  CHECK(turning_indicator(InterfaceCurve(g, z1, z2, 0, kPi)) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("critical point and the sign criterion") {
  const PeriodicGrid g(256, kTwoPi);
  CHECK_THROWS_AS(dalpha_v1_at_critical(InterfaceCurve::flat(g, kPi), {}, 0.1), NoCriticalPoint);
  CHECK_THROWS_AS(
      dalpha_v1_at_critical(InterfaceCurve::from_graph(random_band_limited(g, 4, 0.3, 2), 0, kPi), {}, 0.1),
      NoCriticalPoint);

  const InterfaceCurve c = turning_profile(g, 0.92, 1.0, kPi);
  const CriticalPoint cp = critical_point(c, {}, 0.1);
  CHECK(cp.dz1 == doctest::Approx(0.08).epsilon(1e-9));
  CHECK(std::abs(std::remainder(cp.alpha, kTwoPi)) < 1e-9);
  CHECK(cp.dalpha_v1 < 0.0);

  // A non-symmetric member and its mirror image share the criterion value.
  const InterfaceCurve base = turning_profile(g, 0.92, 1.0, kPi);
  std::vector<double> z2 = base.z2;
  for (std::size_t j = 0; j < 256; ++j) z2[j] += 0.2 * std::cos(2.0 * g.x(j));
  const InterfaceCurve skew(g, base.z1, z2, 0, kPi);
  CHECK(dalpha_v1_at_critical(mirrored(skew), {}, 0.1) ==
        doctest::Approx(dalpha_v1_at_critical(skew, {}, 0.1)).epsilon(1e-8));
}

TEST_CASE("parametrization ratio and CFL") {
  const PeriodicGrid g(64, kTwoPi);
  const InterfaceCurve flat = InterfaceCurve::flat(g, kPi);
  CHECK(parametrization_ratio(flat) == doctest::Approx(1.0));
  CHECK(curve_cfl_dt(flat, 0.3) == doctest::Approx(0.3 * g.spacing() / kPi));
  CHECK(parametrization_ratio(turning_profile(g, 0.9, 1.0, kPi)) > 5.0);
  CHECK_THROWS_AS(step_curve(flat, 1.0, {}), CflViolation);
}

TEST_CASE("self-intersection guard") {
  const PeriodicGrid g(64, kTwoPi);
  std::vector<double> z1(64), z2(64);
  // The two halves of this curve pass through the same point.
  for (std::size_t j = 0; j < 64; ++j) {
    const double a = g.x(j);
    z1[j] = a - 2.0 * std::sin(a);
    z2[j] = 0.0;
  }
  const InterfaceCurve c(g, z1, z2, 0, kPi);
  CHECK_THROWS_AS(curve_velocity(c, {}, 1e-3), ChordArcViolation);
}

TEST_CASE("curve runs") {
  SUBCASE("flat curve keeps indicator one") {
    SimConfig c = curve_config(0.0);
    c.initial_data.kind = InitialKind::Zero;
    c.n_points = 32;
    c.t_final = 0.1;
    c.report_interval = 0.05;
    const RunLog log = run_curve(c);
    CHECK(log.status == RunStatus::Completed);
    for (const TurningSample& t : log.turning) CHECK(t.indicator == doctest::Approx(1.0));
    CHECK_FALSE(log.initial_dalpha_v1.has_value());
  }

  SUBCASE("small graph data never turn") {
    SimConfig c = curve_config(0.0);
    c.initial_data.kind = InitialKind::SlopeProfile;
    c.initial_data.slope = 0.5;
    c.n_points = 128;
    const RunLog log = run_curve(c);
    CHECK(log.status == RunStatus::Completed);
    for (const TurningSample& t : log.turning) CHECK(t.indicator > 0.0);
  }

  SUBCASE("steep family members turn, earlier for steeper data") {
    double previous = 1e9;
    for (double s : {0.9, 0.92, 0.93}) {
      const RunLog log = run_curve(curve_config(s));
      CAPTURE(s);
      CHECK(log.status == RunStatus::TurningDetected);
      REQUIRE(log.turning_time.has_value());
      CHECK(*log.turning_time < previous);
      CHECK(*log.initial_dalpha_v1 < 0.0);
      previous = *log.turning_time;
    }
  }
}
