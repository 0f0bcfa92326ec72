#include "muskat/graph.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "flux_kernels.hpp"
#include "muskat/errors.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

double QuadratureSpec::effective_alpha_max(const PeriodicGrid& grid) const {
  return alpha_max.value_or(0.5 * grid.length());
}

void QuadratureSpec::validate(const PeriodicGrid& grid) const {
  if (!(inner_cut > 0.0 && inner_cut <= 1.0)) {
    throw InvalidArgument("QuadratureSpec: inner_cut must lie in (0, 1] grid spacings");
  }
  const double amax = effective_alpha_max(grid);
  if (!(amax > inner_cut * grid.spacing()) || amax > 0.5 * grid.length() * (1.0 + 1e-12)) {
    throw InvalidArgument("QuadratureSpec: alpha_max must lie in (inner_cut, L/2]");
  }
}

GraphState::GraphState(RealField f_, double time_, double rho_bar_, bool unstable_)
    : f(f_.mean_removed() ? std::move(f_) : f_.without_mean()),
      time(time_),
      rho_bar(rho_bar_),
      unstable(unstable_) {
  if (!std::isfinite(rho_bar)) throw InvalidArgument("GraphState: rho_bar must be finite");
  if (rho_bar <= 0.0 && !unstable) {
    throw InvalidArgument("GraphState: rho_bar <= 0 (Rayleigh-Taylor unstable) requires unstable=true");
  }
}

namespace {

void require_finite(const RealField& r, const char* what) {
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!std::isfinite(r[j])) {
      throw NonFiniteFlux(std::string(what) + ": non-finite value at sample " + std::to_string(j));
    }
  }
}

}  // namespace

RealField flux_arctan(const GraphState& state, const QuadratureSpec& quad) {
  const RealField& f = state.f;
  quad.validate(f.grid());
  const RealField fx = derivative(f, 1);
  const detail::ShiftNodes nodes = detail::build_shift_nodes(f.grid(), quad);
  const RealField g = detail::integrate_arctan_kernel(f, fx, nodes, quad.periodized);
  RealField out = (state.rho_bar / std::numbers::pi) * derivative(g, 1);
  require_finite(out, "flux_arctan");
  return out;
}

RealField flux_rational(const GraphState& state, const QuadratureSpec& quad) {
  const RealField& f = state.f;
  quad.validate(f.grid());
  const RealField fx = derivative(f, 1);
  const RealField fxx = derivative(f, 2);
  const detail::ShiftNodes nodes = detail::build_shift_nodes(f.grid(), quad);
  const RealField g = detail::integrate_rational_kernel(f, fx, fxx, nodes, quad.periodized);
  RealField out = (state.rho_bar / std::numbers::pi) * g;
  require_finite(out, "flux_rational");
  return out;
}

RealField flux(const GraphState& state, const QuadratureSpec& quad, FluxForm form) {
  return form == FluxForm::Arctan ? flux_arctan(state, quad) : flux_rational(state, quad);
}

RealField linearized_rhs(const GraphState& state) {
  return -state.rho_bar * apply_lambda_s(state.f, 1.0);
}

double cfl_dt(const GraphState& state, double cfl_factor) {
  if (!(cfl_factor > 0.0)) throw InvalidArgument("cfl_dt: cfl_factor must be positive");
  if (state.rho_bar == 0.0) return std::numeric_limits<double>::infinity();
  const double slope = derivative(state.f, 1).max_abs();
  return cfl_factor * state.f.grid().spacing() / (std::abs(state.rho_bar) * (1.0 + slope * slope));
}

namespace {

RealField axpy(const RealField& y, double a, const RealField& x) {
  std::vector<double> v(y.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = y[i] + a * x[i];
  return RealField(y.grid(), std::move(v));
}

RealField semigroup(const RealField& u, double rho_bar, double tau) {
  return apply_multiplier(u, [rho_bar, tau](long, double xi) -> std::complex<double> {
    return std::exp(-rho_bar * std::abs(xi) * tau);
  });
}

}  // namespace

GraphState step(const GraphState& state, double dt, const StepOptions& opts) {
  if (!(dt > 0.0)) throw InvalidArgument("step: dt must be positive");
  const double limit = cfl_dt(state, opts.cfl_factor);
  if (dt > limit * (1.0 + 1e-12)) {
    throw CflViolation("step: dt = " + std::to_string(dt) + " exceeds CFL limit " +
                       std::to_string(limit));
  }
  const double rho = state.rho_bar;
  const auto stage = [&](const RealField& u) { return GraphState(u, state.time, rho, state.unstable); };
  const RealField& u0 = state.f;

  RealField next = u0;
  if (opts.scheme == TimeScheme::Rk4Explicit) {
    const auto rhs = [&](const RealField& u) { return flux(stage(u), opts.quad, opts.form); };
    const RealField k1 = rhs(u0);
    const RealField k2 = rhs(axpy(u0, 0.5 * dt, k1));
    const RealField k3 = rhs(axpy(u0, 0.5 * dt, k2));
    const RealField k4 = rhs(axpy(u0, dt, k3));
    std::vector<double> v(u0.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = u0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    next = RealField(u0.grid(), std::move(v));
  } else {
    // Nonlinear remainder N(u) = flux(u) + rho_bar Lambda u.
    const auto remainder = [&](const RealField& u) {
      const GraphState s = stage(u);
      return flux(s, opts.quad, opts.form) - linearized_rhs(s);
    };
    const double half = 0.5 * dt;
    const RealField k1 = remainder(u0);
    const RealField k2 = remainder(semigroup(axpy(u0, half, k1), rho, half));
    const RealField k3 = remainder(axpy(semigroup(u0, rho, half), half, k2));
    const RealField k4 = remainder(axpy(semigroup(u0, rho, dt), dt, semigroup(k3, rho, half)));
    const RealField e_u0 = semigroup(u0, rho, dt);
    const RealField e_k1 = semigroup(k1, rho, dt);
    const RealField e_k23 = semigroup(k2 + k3, rho, half);
    std::vector<double> v(u0.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = e_u0[i] + dt / 6.0 * (e_k1[i] + 2.0 * e_k23[i] + k4[i]);
    }
    next = RealField(u0.grid(), std::move(v));
  }
  require_finite(next, "step");
  return GraphState(next.without_mean(), state.time + dt, rho, state.unstable);
}

}  // namespace muskat
