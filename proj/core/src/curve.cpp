#include "muskat/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "flux_kernels.hpp"
#include "muskat/errors.hpp"
#include "muskat/parallel.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

InterfaceCurve::InterfaceCurve(PeriodicGrid grid_, std::vector<double> z1_, std::vector<double> z2_,
                               double time_, double rho_bar_, bool unstable_)
    : grid(grid_), z1(std::move(z1_)), z2(std::move(z2_)), time(time_), rho_bar(rho_bar_),
      unstable(unstable_) {
  if (z1.size() != grid.n_points() || z2.size() != grid.n_points()) {
    throw InvalidArgument("InterfaceCurve: z1 and z2 need one sample per grid point");
  }
  for (std::size_t j = 0; j < z1.size(); ++j) {
    if (!std::isfinite(z1[j]) || !std::isfinite(z2[j])) {
      throw InvalidArgument("InterfaceCurve: non-finite sample " + std::to_string(j));
    }
  }
  if (!std::isfinite(rho_bar)) throw InvalidArgument("InterfaceCurve: rho_bar must be finite");
  if (rho_bar <= 0.0 && !unstable) {
    throw InvalidArgument("InterfaceCurve: rho_bar <= 0 requires unstable=true");
  }
}

InterfaceCurve InterfaceCurve::flat(const PeriodicGrid& grid, double rho_bar) {
  std::vector<double> z1(grid.n_points());
  for (std::size_t j = 0; j < z1.size(); ++j) z1[j] = grid.x(j);
  return InterfaceCurve(grid, std::move(z1), std::vector<double>(grid.n_points(), 0.0), 0.0, rho_bar);
}

InterfaceCurve InterfaceCurve::from_graph(const RealField& f, double time, double rho_bar, bool unstable) {
  const PeriodicGrid& grid = f.grid();
  std::vector<double> z1(grid.n_points());
  for (std::size_t j = 0; j < z1.size(); ++j) z1[j] = grid.x(j);
  return InterfaceCurve(grid, std::move(z1), std::vector<double>(f.samples().begin(), f.samples().end()),
                        time, rho_bar, unstable);
}

RealField InterfaceCurve::horizontal_perturbation() const {
  std::vector<double> p(z1.size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = z1[j] - grid.x(j);
  return RealField(grid, std::move(p));
}

RealField InterfaceCurve::height() const { return RealField(grid, z2); }

CurveVelocity curve_velocity(const InterfaceCurve& curve, const QuadratureSpec& quad,
                             double chord_arc_floor) {
  const PeriodicGrid& grid = curve.grid;
  quad.validate(grid);
  const std::size_t n = grid.n_points();
  const std::size_t mask = n - 1;
  const double L = grid.length();
  const double k = std::numbers::pi / L;

  const RealField p1 = curve.horizontal_perturbation();
  const RealField p2 = curve.height();
  const RealField d1 = derivative(p1, 1), d2 = derivative(p2, 1);
  const RealField dd1 = derivative(p1, 2), dd2 = derivative(p2, 2);

  const detail::ShiftNodes nodes = detail::build_shift_nodes(grid, quad);
  const double shift = nodes.half_shifted ? 0.5 * grid.spacing() : 0.0;
  const auto src = [shift](const RealField& f) { return shift != 0.0 ? translate(f, shift) : f; };
  const RealField s1 = src(p1), s2 = src(p2), sd1 = src(d1), sd2 = src(d2);
  const std::size_t count = nodes.regular.size();
  const bool periodized = quad.periodized;

  std::vector<double> v1(n), v2(n);
  double chord2 = std::numeric_limits<double>::infinity();
#pragma omp parallel reduction(min : chord2)
  {
    std::vector<double> t1(count + 1), t2(count + 1);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < count; ++m) {
        const detail::ShiftNode& nd = nodes.regular[m];
        const std::size_t j = (i - static_cast<std::size_t>(nd.offset)) & mask;
        const double da = p1[i] - s1[j] + nd.alpha;
        const double db = p2[i] - s2[j];
        double kernel, ratio2;
        if (periodized) {
          const double sa = std::sin(k * da), ca = std::cos(k * da), sh = std::sinh(k * db);
          const double denom = sh * sh + sa * sa;
          kernel = k * sa * ca / denom;
          ratio2 = denom / (nd.sin_t * nd.sin_t);
        } else {
          const double denom = da * da + db * db;
          kernel = da / denom;
          ratio2 = denom / (nd.alpha * nd.alpha);
        }
        chord2 = std::min(chord2, ratio2);
        t1[m] = nd.weight * kernel * (d1[i] - sd1[j]);
        t2[m] = nd.weight * kernel * (d2[i] - sd2[j]);
      }
      const double zx = 1.0 + d1[i], zy = d2[i];
      const double lim = nodes.limit_weight * zx / (zx * zx + zy * zy);
      t1[count] = lim * dd1[i];
      t2[count] = lim * dd2[i];
      v1[i] = pairwise_sum(t1);
      v2[i] = pairwise_sum(t2);
    }
  }
  const double pref = curve.rho_bar / std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    v1[i] *= pref;
    v2[i] *= pref;
    if (!std::isfinite(v1[i]) || !std::isfinite(v2[i])) {
      throw NonFiniteFlux("curve_velocity: non-finite value at sample " + std::to_string(i));
    }
  }
  const double chord = std::sqrt(chord2);
  if (chord < chord_arc_floor) {
    throw ChordArcViolation("curve_velocity: chord-arc constant " + std::to_string(chord) +
                            " below floor " + std::to_string(chord_arc_floor));
  }
  return {RealField(grid, std::move(v1)), RealField(grid, std::move(v2)), chord};
}

double turning_indicator(const InterfaceCurve& curve) {
  return 1.0 + min_interpolant(derivative(curve.horizontal_perturbation(), 1)).value;
}

CriticalPoint critical_point(const InterfaceCurve& curve, const QuadratureSpec& quad, double critical_tol) {
  const Extremum m = min_interpolant(derivative(curve.horizontal_perturbation(), 1));
  const double dz1 = 1.0 + m.value;
  if (dz1 > critical_tol) {
    throw NoCriticalPoint("min dz1/dalpha = " + std::to_string(dz1) + " exceeds critical_tol " +
                          std::to_string(critical_tol));
  }
  const CurveVelocity vel = curve_velocity(curve, quad);
  return {m.x, dz1, TrigInterpolant(vel.v1).derivative(m.x, 1)};
}

double dalpha_v1_at_critical(const InterfaceCurve& curve, const QuadratureSpec& quad, double critical_tol) {
  return critical_point(curve, quad, critical_tol).dalpha_v1;
}

namespace {

std::pair<double, double> tangent_range(const InterfaceCurve& curve) {
  const RealField d1 = derivative(curve.horizontal_perturbation(), 1);
  const RealField d2 = derivative(curve.height(), 1);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t j = 0; j < d1.size(); ++j) {
    const double s = std::hypot(1.0 + d1[j], d2[j]);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

}  // namespace

double parametrization_ratio(const InterfaceCurve& curve) {
  const auto [lo, hi] = tangent_range(curve);
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

double curve_cfl_dt(const InterfaceCurve& curve, double cfl_factor) {
  if (!(cfl_factor > 0.0)) throw InvalidArgument("curve_cfl_dt: cfl_factor must be positive");
  if (curve.rho_bar == 0.0) return std::numeric_limits<double>::infinity();
  return cfl_factor * curve.grid.spacing() * tangent_range(curve).first / std::abs(curve.rho_bar);
}

InterfaceCurve step_curve(const InterfaceCurve& curve, double dt, const QuadratureSpec& quad,
                          double cfl_factor, double chord_arc_floor) {
  if (!(dt > 0.0)) throw InvalidArgument("step_curve: dt must be positive");
  const double limit = curve_cfl_dt(curve, cfl_factor);
  if (dt > limit * (1.0 + 1e-12)) {
    throw CflViolation("step_curve: dt = " + std::to_string(dt) + " exceeds CFL limit " +
                       std::to_string(limit));
  }
  const std::size_t n = curve.grid.n_points();
  const auto shifted = [&](const CurveVelocity* k, double a) {
    if (k == nullptr) return curve;
    std::vector<double> z1(n), z2(n);
    for (std::size_t j = 0; j < n; ++j) {
      z1[j] = curve.z1[j] + a * k->v1[j];
      z2[j] = curve.z2[j] + a * k->v2[j];
    }
    return InterfaceCurve(curve.grid, std::move(z1), std::move(z2), curve.time, curve.rho_bar,
                          curve.unstable);
  };
  const auto rhs = [&](const InterfaceCurve& c) { return curve_velocity(c, quad, chord_arc_floor); };
  const CurveVelocity k1 = rhs(curve);
  const CurveVelocity k2 = rhs(shifted(&k1, 0.5 * dt));
  const CurveVelocity k3 = rhs(shifted(&k2, 0.5 * dt));
  const CurveVelocity k4 = rhs(shifted(&k3, dt));
  std::vector<double> z1(n), z2(n);
  for (std::size_t j = 0; j < n; ++j) {
    z1[j] = curve.z1[j] + dt / 6.0 * (k1.v1[j] + 2.0 * k2.v1[j] + 2.0 * k3.v1[j] + k4.v1[j]);
    z2[j] = curve.z2[j] + dt / 6.0 * (k1.v2[j] + 2.0 * k2.v2[j] + 2.0 * k3.v2[j] + k4.v2[j]);
    if (!std::isfinite(z1[j]) || !std::isfinite(z2[j])) {
      throw NonFiniteFlux("step_curve: non-finite sample " + std::to_string(j));
    }
  }
  return InterfaceCurve(curve.grid, std::move(z1), std::move(z2), curve.time + dt, curve.rho_bar,
                        curve.unstable);
}

}  // namespace muskat
