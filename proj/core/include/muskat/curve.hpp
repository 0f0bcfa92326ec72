#pragma once

#include <vector>

#include "muskat/graph.hpp"
#include "muskat/grid.hpp"

namespace muskat {

/// Parametrized interface z(alpha) = (z1, z2) over a periodic parameter grid.
///
/// z1(alpha) - alpha and z2 are L-periodic; the curve is a periodic perturbation of the
/// flat line z = (alpha, 0).
struct InterfaceCurve {
  PeriodicGrid grid;
  std::vector<double> z1;
  std::vector<double> z2;
  double time = 0.0;
  double rho_bar = 0.0;
  bool unstable = false;

  /// Throws InvalidArgument on size mismatch, non-finite samples, or rho_bar <= 0 without `unstable`.
  InterfaceCurve(PeriodicGrid grid, std::vector<double> z1, std::vector<double> z2, double time,
                 double rho_bar, bool unstable = false);

  static InterfaceCurve flat(const PeriodicGrid& grid, double rho_bar);
  /// z = (alpha, f(alpha)).
  static InterfaceCurve from_graph(const RealField& f, double time, double rho_bar,
                                   bool unstable = false);

  /// z1(alpha) - alpha, periodic.
  RealField horizontal_perturbation() const;
  RealField height() const;
};

struct CurveVelocity {
  RealField v1;
  RealField v2;
  /// min over sampled pairs of |z(a) - z(b)| / dist(a, b), measured on the periodic images.
  double chord_arc_min;
};

/// Right-hand side of the curve equation. The kernel is summed over all periodic images
/// when quad.periodized is set. Throws ChordArcViolation when chord_arc_min < chord_arc_floor.
CurveVelocity curve_velocity(const InterfaceCurve& curve, const QuadratureSpec& quad,
                             double chord_arc_floor = 0.0);

/// min over alpha of d(z1)/d(alpha) on the trigonometric interpolant; <= 0 once the curve turns.
double turning_indicator(const InterfaceCurve& curve);

/// Location of the most vertical tangent and d(v1)/d(alpha) there.
struct CriticalPoint {
  double alpha;
  double dz1;
  double dalpha_v1;
};

/// Throws NoCriticalPoint when min d(z1)/d(alpha) > critical_tol.
CriticalPoint critical_point(const InterfaceCurve& curve, const QuadratureSpec& quad,
                             double critical_tol = 0.2);
double dalpha_v1_at_critical(const InterfaceCurve& curve, const QuadratureSpec& quad,
                             double critical_tol = 0.2);

/// max |z'| / min |z'|; runs stop trusting the parametrization above 20.
double parametrization_ratio(const InterfaceCurve& curve);

/// c * spacing * min |z'| / |rho_bar|; +inf when rho_bar == 0.
double curve_cfl_dt(const InterfaceCurve& curve, double cfl_factor = 0.3);

/// Explicit RK4 step. Throws CflViolation, ChordArcViolation, NonFiniteFlux.
InterfaceCurve step_curve(const InterfaceCurve& curve, double dt, const QuadratureSpec& quad,
                          double cfl_factor = 0.3, double chord_arc_floor = 0.0);

}  // namespace muskat
