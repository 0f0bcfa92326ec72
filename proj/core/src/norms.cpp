#include "muskat/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <numbers>
#include <vector>

#include "muskat/errors.hpp"
#include "muskat/spectral.hpp"

namespace muskat {
namespace {

bool valid_exponent(double p) { return p >= 1.0 || p == kInf; }

double mode_weight(std::size_t k, std::size_t half) { return (k == 0 || k == half) ? 1.0 : 2.0; }

/// |m(u)| for the first (2|sin(u/2)|) or symmetric second (4 sin^2(u/2)) difference symbol.
double symbol(int order, double u) {
  const double s = std::sin(0.5 * u);
  return order == 1 ? 2.0 * std::abs(s) : 4.0 * s * s;
}

/// Gauss-Legendre nodes on [-1, 1] (16 points).
constexpr double kGlX[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss16(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) acc += kGlW[i] * (f(c - r * kGlX[i]) + f(c + r * kGlX[i]));
  return acc * r;
}

}  // namespace

BesovIndex::BesovIndex(double s_, double p_, double q_) : s(s_), p(p_), q(q_) {
  if (!(s > 0.0 && s < 2.0)) throw InvalidArgument("BesovIndex: s must lie in (0, 2)");
  if (!valid_exponent(p) || !valid_exponent(q)) {
    throw InvalidArgument("BesovIndex: p and q must lie in [1, inf]");
  }
}

double norm_lp(const RealField& f, double p) {
  if (!valid_exponent(p)) throw InvalidArgument("norm_lp: p must be >= 1");
  if (p == kInf) return f.max_abs();
  double acc = 0.0;
  if (p == 2.0) {
    for (double v : f.samples()) acc += v * v;
    return std::sqrt(f.grid().spacing() * acc);
  }
  for (double v : f.samples()) acc += std::pow(std::abs(v), p);
  return std::pow(f.grid().spacing() * acc, 1.0 / p);
}

double norm_homog_sobolev(const RealField& f, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("norm_homog_sobolev: s must be >= 0");
  const SpectralField c = forward_transform(f);
  const auto coeffs = c.half_spectrum();
  const std::size_t half = f.grid().n_points() / 2;
  double acc = 0.0;
  for (std::size_t k = (s > 0.0 ? 1 : 0); k <= half; ++k) {
    const double xi = std::abs(f.grid().wavenumber(static_cast<long>(k)));
    acc += mode_weight(k, half) * std::pow(xi, 2.0 * s) * std::norm(coeffs[k]);
  }
  return std::sqrt(f.grid().length() * acc);
}

double norm_wiener(const RealField& f, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("norm_wiener: alpha must be >= 0");
  const SpectralField c = forward_transform(f);
  const auto coeffs = c.half_spectrum();
  const std::size_t half = f.grid().n_points() / 2;
  double acc = 0.0;
  for (std::size_t k = 1; k <= half; ++k) {
    const double xi = std::abs(f.grid().wavenumber(static_cast<long>(k)));
    acc += mode_weight(k, half) * std::pow(xi, alpha) * std::abs(coeffs[k]);
  }
  return acc;
}

double spectral_holder_tail(const RealField& f) {
  const SpectralField c = forward_transform(f);
  const auto coeffs = c.half_spectrum();
  const std::size_t half = f.grid().n_points() / 2;
  double acc = 0.0;
  for (std::size_t k = half / 2 + 1; k <= half; ++k) {
    const double xi = std::abs(f.grid().wavenumber(static_cast<long>(k)));
    acc += mode_weight(k, half) * std::pow(xi, 2.5) * std::abs(coeffs[k]);
  }
  return acc;
}

NormReport norm_report(const RealField& f, double time) {
  NormReport r;
  r.time = time;
  r.l_inf = sup_abs_interpolant(f);
  r.l2 = norm_lp(f, 2.0);
  r.lipschitz = sup_abs_interpolant(derivative(f, 1));
  r.wiener1 = norm_wiener(f, 1.0);
  r.hs_half = norm_homog_sobolev(f, 0.5);
  r.hs_one = norm_homog_sobolev(f, 1.0);
  r.hs_three_half = norm_homog_sobolev(f, 1.5);
  r.blowup_proxy = sup_abs_interpolant(derivative(f, 2)) + spectral_holder_tail(f);
  return r;
}

namespace {
double compute_besov_normalization(const BesovIndex& idx);
}

double besov_normalization(const BesovIndex& idx) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, double> cache;
  const auto key = std::make_tuple(idx.s, idx.q, idx.difference_order());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double value = compute_besov_normalization(idx);
  std::lock_guard lock(mutex);
  cache.emplace(key, value);
  return value;
}

namespace {
double compute_besov_normalization(const BesovIndex& idx) {
  const int order = idx.difference_order();
  if (idx.q == kInf) {
    // sup_u |m(u)| / u^s: the maximum lies in (0, 2 pi]; scan then polish.
    double best = 0.0, best_u = 0.0;
    const int n = 20000;
    for (int i = 1; i <= n; ++i) {
      const double u = 2.0 * std::numbers::pi * i / n;
      const double v = symbol(order, u) / std::pow(u, idx.s);
      if (v > best) best = v, best_u = u;
    }
    double lo = std::max(best_u - 2.0 * std::numbers::pi / n, 1e-12);
    double hi = best_u + 2.0 * std::numbers::pi / n;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (symbol(order, m1) / std::pow(m1, idx.s) < symbol(order, m2) / std::pow(m2, idx.s)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    const double u = 0.5 * (lo + hi);
    return std::max(best, symbol(order, u) / std::pow(u, idx.s));
  }
  const double q = idx.q, a = 1.0 + q * idx.s;
  const auto integrand = [&](double u) { return std::pow(symbol(order, u), q) * std::pow(u, -a); };
  // Near 0 the symbol behaves like u^order; integrate that power law exactly on (0, u0).
  const double u0 = 1e-3;
  const double c0 = symbol(order, u0) / std::pow(u0, order);
  double acc = std::pow(c0, q) * std::pow(u0, order * q - q * idx.s) / (order * q - q * idx.s);
  acc += gauss16(integrand, u0, 0.1);
  acc += gauss16(integrand, 0.1, 1.0);
  acc += gauss16(integrand, 1.0, 2.0 * std::numbers::pi);
  // Whole periods of the symbol out to U, then the mean-value tail.
  const int periods = 4000;
  const double period = 2.0 * std::numbers::pi;
  for (int j = 1; j < periods; ++j) {
    const double a0 = j * period;
    for (int part = 0; part < 4; ++part) {
      acc += gauss16(integrand, a0 + part * period / 4, a0 + (part + 1) * period / 4);
    }
  }
  double mean = 0.0;
  for (int part = 0; part < 4; ++part) {
    mean += gauss16([&](double u) { return std::pow(symbol(order, u), q); }, part * period / 4,
                    (part + 1) * period / 4);
  }
  mean /= period;
  const double upper = periods * period;
  acc += mean * std::pow(upper, 1.0 - a) / (a - 1.0);
  return std::pow(2.0 * acc, 1.0 / q);
}
}  // namespace

double besov_seminorm(const RealField& f, const BesovIndex& idx, std::size_t shift_count) {
  BesovOptions opts;
  opts.shift_count = shift_count;
  return besov_seminorm(f, idx, opts);
}

double besov_seminorm(const RealField& f, const BesovIndex& idx, const BesovOptions& opts) {
  if (opts.shift_count < 2) throw InvalidArgument("besov_seminorm: need at least 2 shifts");
  const PeriodicGrid& g = f.grid();
  const int order = idx.difference_order();
  const double y0 = g.spacing(), ymax = 0.5 * g.length();
  const std::size_t n = opts.shift_count;
  const double du = std::log(ymax / y0) / static_cast<double>(n - 1);

  // Difference norms ||Delta_y f||_p on the logarithmic ladder.
  std::vector<double> y(n), norms(n);
  const long nyq = static_cast<long>(g.nyquist());
  for (std::size_t j = 0; j < n; ++j) {
    y[j] = y0 * std::exp(du * static_cast<double>(j));
    const double yy = y[j];
    RealField d = apply_multiplier(f, [&](long k, double xi) -> std::complex<double> {
      if (order == 2) return 2.0 - 2.0 * std::cos(xi * yy);
      if (k == nyq) return 1.0 - std::cos(xi * yy);
      return 1.0 - std::polar(1.0, -xi * yy);
    });
    // The sup is taken over the interpolant so that the seminorm does not depend on where the grid sits.
    norms[j] = idx.p == kInf ? sup_abs_interpolant(d) : norm_lp(d, idx.p);
  }

  const double norm_const = opts.normalized ? besov_normalization(idx) : 1.0;
  if (idx.q == kInf) {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) best = std::max(best, norms[j] / std::pow(y[j], idx.s));
    return best / norm_const;
  }

  const double q = idx.q, s = idx.s, a = 1.0 + q * s;
  // (0, y0): ||Delta_y f|| ~ C y^order.
  double acc = std::pow(norms[0], q) * std::pow(y0, -q * s) / (q * (order - s));
  // [y0, L/2]: trapezoid in log y, where dy/y is uniform.
  for (std::size_t j = 0; j < n; ++j) {
    const double w = (j == 0 || j + 1 == n) ? 0.5 * du : du;
    acc += w * std::pow(norms[j] / std::pow(y[j], s), q);
  }
  if (opts.periodic_tail) {
    // |y| > L/2: fold the images y = mL -+ t back onto t in [0, L/2].
    const double L = g.length();
    const int images = 64;
    const auto weight = [&](double t) {
      double w = 0.0;
      for (int m = 1; m <= images; ++m) {
        w += std::pow(m * L - t, -a) + std::pow(m * L + t, -a);
      }
      const double edge = (images + 0.5) * L;
      w += (std::pow(edge - t, 1.0 - a) + std::pow(edge + t, 1.0 - a)) / (L * (a - 1.0));
      return w;
    };
    acc += std::pow(norms[0], q) * weight(0.0) * y0 / (order * q + 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (j == 0 || j + 1 == n) ? 0.5 * du : du;
      acc += w * std::pow(norms[j], q) * weight(y[j]) * y[j];
    }
  }
  return std::pow(2.0 * acc, 1.0 / q) / norm_const;
}

double check_interpolation(const RealField& f, double s1, double s2, double theta, double p,
                           double r, std::size_t shift_count) {
  if (!(s1 < s2)) throw InvalidArgument("check_interpolation: need s1 < s2");
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("check_interpolation: theta in (0,1)");
  const double s_mid = theta * s1 + (1.0 - theta) * s2;
  const double num = besov_seminorm(f, BesovIndex(s_mid, p, 1.0), shift_count);
  const double b1 = besov_seminorm(f, BesovIndex(s1, p, r), shift_count);
  const double b2 = besov_seminorm(f, BesovIndex(s2, p, r), shift_count);
  const double den = std::pow(b1, theta) * std::pow(b2, 1.0 - theta);
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    throw InvalidArgument("check_interpolation: field is zero in the denominator norms");
  }
  return num / den;
}

double commutator_ratio(const RealField& phi, const RealField& f, int k, int l, double p) {
  if (!(p > 1.0 && p < kInf)) throw InvalidArgument("commutator_ratio: p must lie in (1, inf)");
  if (k < 0 || l < 0 || k + l > 2) throw InvalidArgument("commutator_ratio: need k, l >= 0, k+l <= 2");
  if (!(phi.grid() == f.grid())) throw InvalidArgument("commutator_ratio: grids differ");

  const double spread =
      *std::max_element(phi.samples().begin(), phi.samples().end()) -
      *std::min_element(phi.samples().begin(), phi.samples().end());
  if (spread <= 1e-14 * std::max(1.0, phi.max_abs())) return 0.0;

  const RealField dkf = k == 0 ? f : derivative(f, k);
  std::vector<double> prod(f.size());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = phi[j] * dkf[j];
  const RealField h_prod = hilbert(RealField(f.grid(), std::move(prod)));
  const RealField h_dkf = hilbert(dkf);
  std::vector<double> comm(f.size());
  for (std::size_t j = 0; j < comm.size(); ++j) comm[j] = h_prod[j] - phi[j] * h_dkf[j];
  RealField c(f.grid(), std::move(comm));
  if (l > 0) c = derivative(c, l);

  const double phi_norm = k + l == 0 ? phi.max_abs() : derivative(phi, k + l).max_abs();
  const double f_norm = norm_lp(f, p);
  if (phi_norm == 0.0 || f_norm == 0.0) return 0.0;
  return norm_lp(c, p) / (phi_norm * f_norm);
}

}  // namespace muskat
