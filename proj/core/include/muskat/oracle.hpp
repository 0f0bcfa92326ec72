#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "muskat/graph.hpp"
#include "muskat/grid.hpp"

namespace muskat {

/// Direct principal-value evaluation of the graph flux, independent of the fast kernels.
///
/// The alpha-integral runs over the whole line: the periodic images of the plain kernel are
/// summed explicitly (|m| <= 32, cotangent closure, leading tail term). Three symmetric
/// exclusions eps = 4h, 2h, h are extrapolated to eps -> 0.
struct OracleFlux {
  RealField flux;
  /// Flux with the exclusion at eps = 4h, 2h, h (before extrapolation).
  std::array<RealField, 3> ladder;
  /// max|F(4h) - F(2h)| / max|F(2h) - F(h)|; about 2 when the leading error is linear in eps.
  double ladder_ratio;
  /// max difference between the two first-stage extrapolants.
  double richardson_gap;
};

/// Single-threaded by design. Throws NonFiniteFlux.
OracleFlux pv_flux_direct(const GraphState& state);

/// 2 * max|O_N - O_2N| over the coarse nodes, with O_2N computed from the spectrally
/// refined state; floored at 1e-12 * max|flux|.
double oracle_envelope(const GraphState& state);

enum class ConvergenceMethod { FastRational, FastArctan, Oracle };

struct ConvergenceReport {
  std::vector<std::size_t> resolutions;  ///< all but the finest
  std::vector<double> errors;            ///< max-norm error vs the finest, at coarse nodes
  double rate;                           ///< least-squares log-log slope; +inf if errors hit roundoff
};

/// Resamples `initial` spectrally to each N (same length), evaluates the flux and compares
/// with the finest resolution. `resolutions` must be increasing powers of two.
ConvergenceReport convergence_study(const RealField& initial, const std::vector<std::size_t>& resolutions,
                                    double rho_bar = 3.141592653589793,
                                    ConvergenceMethod method = ConvergenceMethod::FastRational,
                                    const QuadratureSpec& quad = {});

/// |int_0^inf e^{-d} cos(d A) dd - 1/(1 + A^2)| with the integral done by adaptive quadrature.
double delta_cos_identity_error(double a);
/// Same for int_0^inf e^{-d} sin^2(d A / 2) dd against A^2 / (2 (1 + A^2)).
double delta_sin2_identity_error(double a);

}  // namespace muskat
