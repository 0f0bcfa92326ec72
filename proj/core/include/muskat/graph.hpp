#pragma once

#include <optional>

#include "muskat/grid.hpp"

namespace muskat {

enum class QuadratureRule { MidpointExcludeZero, TrapezoidShifted };
enum class FluxForm { Arctan, Rational };
enum class TimeScheme { Rk4Explicit, Rk4IntegratingFactor };

/// Principal-value quadrature over the shift variable alpha.
///
/// With `periodized` set, the kernel is the closed-form sum over all periodic images,
/// so integrating alpha over one period reproduces the integral over the whole line
/// for periodic data. Without it, the plain kernel is integrated over |alpha| <= alpha_max.
struct QuadratureSpec {
  double inner_cut = 0.5;                ///< in grid spacings, in (0, 1]
  std::optional<double> alpha_max;       ///< absolute; defaults to L/2
  QuadratureRule rule = QuadratureRule::MidpointExcludeZero;
  bool periodized = true;

  double effective_alpha_max(const PeriodicGrid& grid) const;
  /// Throws InvalidArgument when the fields violate their ranges for `grid`.
  void validate(const PeriodicGrid& grid) const;
};

/// Interface height f (mean removed), time, and rho_bar = (rho^- - rho^+)/2 (kappa = 1).
struct GraphState {
  RealField f;
  double time = 0.0;
  double rho_bar = 0.0;
  bool unstable = false;  ///< required for rho_bar <= 0

  GraphState(RealField f, double time, double rho_bar, bool unstable = false);
};

/// rho_bar/pi * d/dx int arctan(Delta_alpha f) dalpha, with the alpha-integral evaluated
/// first and then differentiated spectrally. Throws NonFiniteFlux.
RealField flux_arctan(const GraphState& state, const QuadratureSpec& quad);

/// rho_bar/pi * int d_x(Delta_alpha f) / (1 + (Delta_alpha f)^2) dalpha, the form obtained by
/// doing the delta-integral of the oscillatory formulation in closed form. Throws NonFiniteFlux.
RealField flux_rational(const GraphState& state, const QuadratureSpec& quad);

RealField flux(const GraphState& state, const QuadratureSpec& quad, FluxForm form);

/// -rho_bar * Lambda f (= -rho_bar d_x H f).
RealField linearized_rhs(const GraphState& state);

/// c_cfl * spacing / (|rho_bar| (1 + ||f_x||_inf^2)); +inf when rho_bar == 0.
double cfl_dt(const GraphState& state, double cfl_factor = 0.3);

struct StepOptions {
  TimeScheme scheme = TimeScheme::Rk4IntegratingFactor;
  QuadratureSpec quad{};
  FluxForm form = FluxForm::Rational;
  double cfl_factor = 0.3;
};

/// One RK4 step. The integrating-factor scheme propagates -rho_bar Lambda exactly through
/// exp(-rho_bar |xi| dt) and treats flux + rho_bar Lambda f explicitly.
/// Throws CflViolation when dt exceeds cfl_dt(state).
GraphState step(const GraphState& state, double dt, const StepOptions& opts);

}  // namespace muskat
