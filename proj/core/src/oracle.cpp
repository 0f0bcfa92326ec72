#include "muskat/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "muskat/errors.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

namespace {

constexpr long kImages = 32;

double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

OracleFlux pv_flux_direct(const GraphState& state) {
  const RealField& f = state.f;
  const PeriodicGrid& grid = f.grid();
  const long n = static_cast<long>(grid.n_points());
  const double h = grid.spacing(), L = grid.length();
  const RealField fx = derivative(f, 1);

  // sum_{m > M} m^-4, leading order.
  const double tail4 = 1.0 / (3.0 * std::pow(kImages + 0.5, 3));
  constexpr std::array<long, 3> kExcl{4, 2, 1};

  std::array<std::vector<double>, 3> partial;
  for (auto& p : partial) p.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> g(static_cast<std::size_t>(n));

  for (long i = 0; i < n; ++i) {
    // Whole-line integrand at alpha = j h, j in (-N/2, N/2].
    for (long j = -n / 2 + 1; j <= n / 2; ++j) {
      if (j == 0) continue;
      const std::size_t src = static_cast<std::size_t>(((i - j) % n + n) % n);
      const double c = f[static_cast<std::size_t>(i)] - f[src];
      const double cx = fx[static_cast<std::size_t>(i)] - fx[src];
      const double alpha = static_cast<double>(j) * h;
      double sum = 0.0;
      for (long m = -kImages; m <= kImages; ++m) {
        const double am = alpha + static_cast<double>(m) * L;
        sum += -cx * c * c / (am * (am * am + c * c));
      }
      sum += std::numbers::pi / L * cx / std::tan(std::numbers::pi * alpha / L);
      sum += 6.0 * alpha * cx * c * c / std::pow(L, 4) * tail4;
      g[static_cast<std::size_t>(j + n / 2)] = sum;
    }
    for (std::size_t e = 0; e < kExcl.size(); ++e) {
      const long cut = kExcl[e];
      double acc = 0.0;
      for (long j = -n / 2 + 1; j <= n / 2; ++j) {
        const long aj = std::abs(j);
        if (aj < cut) continue;
        const double w = aj == cut ? 0.5 * h : h;
        acc += w * g[static_cast<std::size_t>(j + n / 2)];
      }
      partial[e][static_cast<std::size_t>(i)] = acc;
    }
  }

  const double pref = state.rho_bar / std::numbers::pi;
  std::vector<double> out(static_cast<std::size_t>(n));
  double gap = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f4 = partial[0][i], f2 = partial[1][i], f1 = partial[2][i];
    // F(eps) = F0 + a eps + b eps^3 + ...
    const double r12 = 2.0 * f1 - f2;
    const double r24 = 2.0 * f2 - f4;
    out[i] = pref * (8.0 * r12 - r24) / 7.0;
    gap = std::max(gap, std::abs(pref * (r12 - r24)));
    if (!std::isfinite(out[i])) {
      throw NonFiniteFlux("pv_flux_direct: non-finite value at sample " + std::to_string(i));
    }
  }
  std::array<RealField, 3> ladder{RealField(grid, partial[0]), RealField(grid, partial[1]),
                                  RealField(grid, partial[2])};
  for (auto& r : ladder) r = pref * r;
  const double d42 = max_abs_diff(ladder[0], ladder[1]);
  const double d21 = max_abs_diff(ladder[1], ladder[2]);
  const double ratio = d21 > 0.0 ? d42 / d21 : 0.0;
  return {RealField(grid, std::move(out)), std::move(ladder), ratio, gap};
}

double oracle_envelope(const GraphState& state) {
  const PeriodicGrid& grid = state.f.grid();
  const PeriodicGrid fine(2 * grid.n_points(), grid.length());
  const OracleFlux coarse = pv_flux_direct(state);
  const OracleFlux refined =
      pv_flux_direct(GraphState(resample(state.f, fine), state.time, state.rho_bar, state.unstable));
  double diff = 0.0;
  for (std::size_t i = 0; i < grid.n_points(); ++i) {
    diff = std::max(diff, std::abs(coarse.flux[i] - refined.flux[2 * i]));
  }
  return std::max(2.0 * diff, 1e-12 * coarse.flux.max_abs());
}

ConvergenceReport convergence_study(const RealField& initial, const std::vector<std::size_t>& resolutions,
                                    double rho_bar, ConvergenceMethod method, const QuadratureSpec& quad) {
  if (resolutions.size() < 2) throw InvalidArgument("convergence_study: need at least two resolutions");
  for (std::size_t r = 1; r < resolutions.size(); ++r) {
    if (resolutions[r] <= resolutions[r - 1]) {
      throw InvalidArgument("convergence_study: resolutions must be increasing");
    }
  }
  const double L = initial.grid().length();
  const auto evaluate = [&](std::size_t n) {
    const PeriodicGrid grid(n, L);
    const GraphState s(resample(initial, grid), 0.0, rho_bar, rho_bar <= 0.0);
    switch (method) {
      case ConvergenceMethod::FastArctan: return flux_arctan(s, quad);
      case ConvergenceMethod::Oracle: return pv_flux_direct(s).flux;
      case ConvergenceMethod::FastRational: break;
    }
    return flux_rational(s, quad);
  };
  const std::size_t finest_n = resolutions.back();
  const RealField finest = evaluate(finest_n);
  const double scale = std::max(finest.max_abs(), std::numeric_limits<double>::min());

  ConvergenceReport report;
  for (std::size_t r = 0; r + 1 < resolutions.size(); ++r) {
    const std::size_t n = resolutions[r];
    if (finest_n % n != 0) throw InvalidArgument("convergence_study: resolutions must nest");
    const RealField coarse = evaluate(n);
    const std::size_t stride = finest_n / n;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(coarse[i] - finest[i * stride]));
    report.resolutions.push_back(n);
    report.errors.push_back(err);
  }

  std::vector<double> lx, ly;
  for (std::size_t r = 0; r < report.errors.size(); ++r) {
    if (report.errors[r] > 1e-13 * scale) {
      lx.push_back(std::log(static_cast<double>(report.resolutions[r])));
      ly.push_back(std::log(report.errors[r]));
    }
  }
  if (lx.size() < 2) {
    report.rate = std::numeric_limits<double>::infinity();
  } else {
    const double k = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t r = 0; r < lx.size(); ++r) {
      sx += lx[r];
      sy += ly[r];
      sxx += lx[r] * lx[r];
      sxy += lx[r] * ly[r];
    }
    report.rate = -(k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return report;
}

namespace {

double exp_sinh_integral(const std::function<double(double)>& g) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(g, 0.0, std::numeric_limits<double>::infinity());
}

}  // namespace

double delta_cos_identity_error(double a) {
  const double v = exp_sinh_integral([a](double d) { return std::exp(-d) * std::cos(d * a); });
  return std::abs(v - 1.0 / (1.0 + a * a));
}

double delta_sin2_identity_error(double a) {
  const double v = exp_sinh_integral([a](double d) {
    const double s = std::sin(0.5 * d * a);
    return std::exp(-d) * s * s;
  });
  return std::abs(v - 0.5 * a * a / (1.0 + a * a));
}

}  // namespace muskat
