#include "flux_kernels.hpp"

#include <cmath>
#include <numbers>

#include "muskat/parallel.hpp"
#include "muskat/spectral.hpp"

namespace muskat::detail {

ShiftNodes build_shift_nodes(const PeriodicGrid& grid, const QuadratureSpec& quad) {
  const long n = static_cast<long>(grid.n_points());
  const double h = grid.spacing(), L = grid.length();
  const double amax = quad.effective_alpha_max(grid);
  const double cut = quad.inner_cut * h;
  const double slack = 1e-9 * h;
  ShiftNodes nodes;
  const auto add = [&](long offset, double alpha, double weight) {
    if (std::abs(alpha) < cut) {
      nodes.limit_weight += weight;
      return;
    }
    const double t = std::numbers::pi * alpha / L;
    const double s = std::sin(t), c = std::cos(t);
    nodes.regular.push_back({offset, alpha, weight, s, c, c / s});
  };
  if (quad.rule == QuadratureRule::MidpointExcludeZero) {
    nodes.half_shifted = true;
    for (long j = -n / 2; j < n / 2; ++j) {
      const double alpha = (static_cast<double>(j) + 0.5) * h;
      if (std::abs(alpha) > amax + slack) continue;
      add(j, alpha, h);
    }
  } else {
    for (long j = -n / 2; j <= n / 2; ++j) {
      const double alpha = static_cast<double>(j) * h;
      if (std::abs(alpha) > amax + slack) continue;
      const bool endpoint = std::abs(std::abs(alpha) - amax) <= slack;
      add(j, alpha, endpoint ? 0.5 * h : h);
    }
  }
  return nodes;
}

namespace {

template <class Kernel, class Limit>
RealField integrate(const PeriodicGrid& grid, const ShiftNodes& nodes, Kernel&& kernel, Limit&& limit) {
  const std::size_t n = grid.n_points();
  const std::size_t mask = n - 1;
  const std::size_t count = nodes.regular.size();
  std::vector<double> out(n);
#pragma omp parallel
  {
    std::vector<double> terms(count + 1);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < count; ++k) {
        const ShiftNode& nd = nodes.regular[k];
        const std::size_t src = (i - static_cast<std::size_t>(nd.offset)) & mask;
        terms[k] = nd.weight * kernel(i, src, nd);
      }
      terms[count] = nodes.limit_weight > 0.0 ? nodes.limit_weight * limit(i) : 0.0;
      out[i] = pairwise_sum(terms);
    }
  }
  return RealField(grid, std::move(out));
}

}  // namespace

RealField integrate_arctan_kernel(const RealField& f, const RealField& fx, const ShiftNodes& nodes,
                                  bool periodized) {
  const PeriodicGrid& grid = f.grid();
  const RealField shifted = nodes.half_shifted ? translate(f, 0.5 * grid.spacing()) : f;
  const double k = std::numbers::pi / grid.length();
  const auto src = shifted.samples();
  const auto fs = f.samples();
  const auto limit = [&](std::size_t i) { return std::atan(fx[i]); };
  if (periodized) {
    return integrate(grid, nodes,
                     [&](std::size_t i, std::size_t j, const ShiftNode& nd) {
                       return std::atan(std::tanh(k * (fs[i] - src[j])) * nd.cot_t);
                     },
                     limit);
  }
  return integrate(grid, nodes,
                   [&](std::size_t i, std::size_t j, const ShiftNode& nd) {
                     return std::atan((fs[i] - src[j]) / nd.alpha);
                   },
                   limit);
}

RealField integrate_rational_kernel(const RealField& f, const RealField& fx, const RealField& fxx,
                                    const ShiftNodes& nodes, bool periodized) {
  const PeriodicGrid& grid = f.grid();
  const double h2 = 0.5 * grid.spacing();
  const RealField shifted = nodes.half_shifted ? translate(f, h2) : f;
  const RealField shifted_x = nodes.half_shifted ? translate(fx, h2) : fx;
  const double k = std::numbers::pi / grid.length();
  const auto src = shifted.samples();
  const auto src_x = shifted_x.samples();
  const auto fs = f.samples();
  const auto fxs = fx.samples();
  const auto limit = [&](std::size_t i) { return fxx[i] / (1.0 + fxs[i] * fxs[i]); };
  if (periodized) {
    return integrate(grid, nodes,
                     [&](std::size_t i, std::size_t j, const ShiftNode& nd) {
                       const double sh = std::sinh(k * (fs[i] - src[j]));
                       const double cx = fxs[i] - src_x[j];
                       return k * cx * nd.sin_t * nd.cos_t / (sh * sh + nd.sin_t * nd.sin_t);
                     },
                     limit);
  }
  return integrate(grid, nodes,
                   [&](std::size_t i, std::size_t j, const ShiftNode& nd) {
                     const double c = fs[i] - src[j];
                     const double cx = fxs[i] - src_x[j];
                     return cx * nd.alpha / (nd.alpha * nd.alpha + c * c);
                   },
                   limit);
}

RealField integrate_log_kernel(const RealField& f, const RealField& fx, const ShiftNodes& nodes,
                               bool periodized) {
  const PeriodicGrid& grid = f.grid();
  const RealField shifted = nodes.half_shifted ? translate(f, 0.5 * grid.spacing()) : f;
  const double k = std::numbers::pi / grid.length();
  const auto src = shifted.samples();
  const auto fs = f.samples();
  const auto limit = [&](std::size_t i) { return std::log1p(fx[i] * fx[i]); };
  if (periodized) {
    return integrate(grid, nodes,
                     [&](std::size_t i, std::size_t j, const ShiftNode& nd) {
                       const double sh = std::sinh(k * (fs[i] - src[j]));
                       return std::log1p(sh * sh / (nd.sin_t * nd.sin_t));
                     },
                     limit);
  }
  return integrate(grid, nodes,
                   [&](std::size_t i, std::size_t j, const ShiftNode& nd) {
                     const double q = (fs[i] - src[j]) / nd.alpha;
                     return std::log1p(q * q);
                   },
                   limit);
}

}  // namespace muskat::detail
