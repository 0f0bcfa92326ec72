#include <cmath>
#include <numbers>

#include "doctest.h"
#include "muskat/config.hpp"
#include "muskat/oracle.hpp"
#include "muskat/spectral.hpp"
#include "test_support.hpp"

using namespace muskat;
using muskat::testing::cosine;
using muskat::testing::kTwoPi;
using muskat::testing::max_abs_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("oracle of zero data is zero") {
  const OracleFlux o = pv_flux_direct(GraphState(RealField::zeros(PeriodicGrid(32, kTwoPi)), 0, kPi));
  CHECK(o.flux.max_abs() == 0.0);
}

TEST_CASE("oracle agrees with the fast fluxes within its envelope") {
  const PeriodicGrid g(64, kTwoPi);
  for (unsigned long seed = 0; seed < 3; ++seed) {
    const GraphState s(random_band_limited(g, 6, 0.4, seed), 0, kPi);
    const double env = oracle_envelope(s);
    const OracleFlux o = pv_flux_direct(s);
    CHECK(max_abs_diff(o.flux, flux_rational(s, {})) <= env);
    CHECK(max_abs_diff(o.flux, flux_arctan(s, {})) <= env);
  }
}

TEST_CASE("exclusion ladder shrinks geometrically") {
  const GraphState s(slope_profile(PeriodicGrid(128, kTwoPi), 0.9), 0, kPi);
  const OracleFlux o = pv_flux_direct(s);
  CHECK(o.ladder_ratio == doctest::Approx(2.0).epsilon(0.1));
  const double d1 = max_abs_diff(o.ladder[0], o.ladder[1]);
  const double d2 = max_abs_diff(o.ladder[1], o.ladder[2]);
  CHECK(d2 < d1);
  CHECK(o.richardson_gap < d2);
}

TEST_CASE("convergence studies") {
  const PeriodicGrid g(128, kTwoPi);

  SUBCASE("single mode is resolved at every resolution") {
    const ConvergenceReport r = convergence_study(cosine(g, 0.1, 1.0), {16, 32, 64, 128});
    REQUIRE(r.errors.size() == 3);
    for (double e : r.errors) CHECK(e < 1e-10);
  }

  SUBCASE("constant field has zero error") {
    const ConvergenceReport r = convergence_study(RealField(g, std::vector<double>(128, 1.0)), {16, 32, 64});
    for (double e : r.errors) CHECK(e == 0.0);
  }

  SUBCASE("slope 0.9 converges at order at least two") {
    const RealField f = slope_profile(PeriodicGrid(256, kTwoPi), 0.9);
    // Above N = 64 the fast flux is already at roundoff, where errors no longer order.
    const ConvergenceReport fast = convergence_study(f, {16, 32, 64});
    for (std::size_t i = 1; i < fast.errors.size(); ++i) CHECK(fast.errors[i] < fast.errors[i - 1]);
    CHECK(fast.rate >= 2.0);
    const ConvergenceReport slow = convergence_study(f, {16, 32, 64, 128}, kPi, ConvergenceMethod::Oracle);
    for (std::size_t i = 1; i < slow.errors.size(); ++i) CHECK(slow.errors[i] < slow.errors[i - 1]);
    CHECK(slow.rate >= 2.0);
  }

  SUBCASE("resolutions must increase") {
    CHECK_THROWS(convergence_study(cosine(g, 0.3, 1.0), {64, 32}));
  }
}

TEST_CASE("delta integral identities") {
  for (double a : {0.0, 1.0, 5.0}) {
    CAPTURE(a);
    CHECK(delta_cos_identity_error(a) < 1e-8);
    CHECK(delta_sin2_identity_error(a) < 1e-8);
  }
}
