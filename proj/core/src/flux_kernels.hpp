#pragma once

// Shared alpha-quadrature loops for the graph fluxes and the energy dissipation.

#include <cstddef>
#include <vector>

#include "muskat/graph.hpp"
#include "muskat/grid.hpp"

namespace muskat::detail {

struct ShiftNode {
  long offset;      ///< f(x_i - alpha) = source[(i - offset) mod N]
  double alpha;
  double weight;
  double sin_t;     ///< sin(pi alpha / L)
  double cos_t;
  double cot_t;
};

struct ShiftNodes {
  std::vector<ShiftNode> regular;
  double limit_weight = 0.0;  ///< weight carried by the alpha -> 0 limit value
  bool half_shifted = false;  ///< sources are f(x - h/2) rather than f
};

ShiftNodes build_shift_nodes(const PeriodicGrid& grid, const QuadratureSpec& quad);

/// g_i = sum_nodes w * K(f_i - f(x_i - alpha), alpha) + w_lim * arctan(f_x(x_i)).
RealField integrate_arctan_kernel(const RealField& f, const RealField& fx, const ShiftNodes& nodes,
                                  bool periodized);

/// g_i = sum_nodes w * (f_x(x_i) - f_x(x_i - alpha)) alpha / (alpha^2 + c^2) (image-summed when
/// periodized) + w_lim * f_xx / (1 + f_x^2).
RealField integrate_rational_kernel(const RealField& f, const RealField& fx, const RealField& fxx,
                                    const ShiftNodes& nodes, bool periodized);

/// g_i = sum_nodes w * log(1 + (Delta_alpha f)^2) (image-summed when periodized)
/// + w_lim * log(1 + f_x^2).
RealField integrate_log_kernel(const RealField& f, const RealField& fx, const ShiftNodes& nodes,
                               bool periodized);

}  // namespace muskat::detail
