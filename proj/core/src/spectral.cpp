#include "muskat/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include "muskat/errors.hpp"

namespace muskat {
namespace {

template <class T>
struct FftwDeleter {
  void operator()(T* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwDeleter<double>>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwDeleter<fftw_complex>>;

RealBuffer alloc_real(std::size_t n) { return RealBuffer(fftw_alloc_real(n)); }
ComplexBuffer alloc_complex(std::size_t n) { return ComplexBuffer(fftw_alloc_complex(n)); }

/// One r2c/c2r plan pair per size. Planning is serialized (FFTW planners are not
/// thread-safe); execution uses the new-array interface on fftw_malloc'd buffers so it
/// can run concurrently and always hits the same aligned codelets.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto in = alloc_real(n);
    auto out = alloc_complex(n / 2 + 1);
    const int ni = static_cast<int>(n);
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_1d(ni, in.get(), out.get(), FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(ni, out.get(), in.get(), FFTW_ESTIMATE);
    plans_.emplace(n, p);
    return p;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

std::vector<std::complex<double>> forward_raw(std::span<const double> samples) {
  const std::size_t n = samples.size();
  const PlanPair plan = PlanCache::instance().get(n);
  auto in = alloc_real(n);
  auto out = alloc_complex(n / 2 + 1);
  std::copy(samples.begin(), samples.end(), in.get());
  fftw_execute_dft_r2c(plan.forward, in.get(), out.get());
  std::vector<std::complex<double>> c(n / 2 + 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = {out[k][0] * inv_n, out[k][1] * inv_n};
  return c;
}

std::vector<double> inverse_raw(std::span<const std::complex<double>> c, std::size_t n) {
  const PlanPair plan = PlanCache::instance().get(n);
  auto in = alloc_complex(n / 2 + 1);
  auto out = alloc_real(n);
  for (std::size_t k = 0; k < c.size(); ++k) {
    in[k][0] = c[k].real();
    in[k][1] = c[k].imag();
  }
  // c2r ignores the imaginary parts of the DC and Nyquist bins; clear them explicitly.
  in[0][1] = 0.0;
  in[n / 2][1] = 0.0;
  fftw_execute_dft_c2r(plan.backward, in.get(), out.get());
  return std::vector<double>(out.get(), out.get() + n);
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  return SpectralField(f.grid(), forward_raw(f.samples()));
}

RealField inverse_transform(const SpectralField& f_hat) {
  return RealField(f_hat.grid(), inverse_raw(f_hat.half_spectrum(), f_hat.grid().n_points()));
}

RealField apply_multiplier(const RealField& f, const Multiplier& m) {
  const PeriodicGrid& g = f.grid();
  auto c = forward_raw(f.samples());
  const std::size_t half = g.n_points() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const long kk = static_cast<long>(k);
    c[k] *= m(kk, g.wavenumber(kk));
  }
  const long kn = static_cast<long>(half);
  c[half] *= m(kn, g.wavenumber(kn)).real();
  return RealField(g, inverse_raw(c, g.n_points()));
}

RealField apply_lambda_s(const RealField& f, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("apply_lambda_s: exponent must be >= 0");
  if (s == 0.0) return f;
  RealField out = apply_multiplier(f, [s](long k, double xi) -> std::complex<double> {
    return k == 0 ? 0.0 : std::pow(std::abs(xi), s);
  });
  return RealField(out.grid(), std::move(out).release(), true);
}

RealField hilbert(const RealField& f) {
  const long nyq = static_cast<long>(f.grid().nyquist());
  RealField out = apply_multiplier(f, [nyq](long k, double) -> std::complex<double> {
    if (k == 0 || k == nyq) return 0.0;
    return {0.0, -1.0};
  });
  return RealField(out.grid(), std::move(out).release(), true);
}

RealField derivative(const RealField& f, int order) {
  if (order < 1 || order > 4) throw InvalidArgument("derivative: order must be in 1..4");
  const long nyq = static_cast<long>(f.grid().nyquist());
  RealField out = apply_multiplier(f, [order, nyq](long k, double xi) -> std::complex<double> {
    if (k == 0) return 0.0;
    if (k == nyq && order % 2 == 1) return 0.0;
    return std::pow(std::complex<double>(0.0, xi), order);
  });
  return RealField(out.grid(), std::move(out).release(), true);
}

RealField translate(const RealField& f, double shift) {
  const long nyq = static_cast<long>(f.grid().nyquist());
  return apply_multiplier(f, [shift, nyq](long k, double xi) -> std::complex<double> {
    if (k == nyq) {
      // The Nyquist mode cannot be translated by a non-grid amount and stay real.
      return std::cos(xi * shift);
    }
    return std::polar(1.0, -xi * shift);
  });
}

RealField resample(const RealField& f, const PeriodicGrid& target) {
  if (std::abs(target.length() - f.grid().length()) > 1e-12 * f.grid().length()) {
    throw InvalidArgument("resample: grids must share the same length");
  }
  const auto src = forward_raw(f.samples());
  const std::size_t src_half = f.grid().n_points() / 2, dst_half = target.n_points() / 2;
  std::vector<std::complex<double>> dst(dst_half + 1, 0.0);
  const std::size_t common = std::min(src_half, dst_half);
  for (std::size_t k = 0; k < common; ++k) dst[k] = src[k];
  if (dst_half == src_half) {
    dst[dst_half] = src[src_half];
  } else if (dst_half > src_half) {
    // The source Nyquist mode splits evenly between +-N/2 on the finer grid.
    dst[src_half] = 0.5 * src[src_half];
  } else {
    dst[dst_half] = 2.0 * src[dst_half].real();
  }
  return RealField(target, inverse_raw(dst, target.n_points()), f.mean_removed());
}

TrigInterpolant::TrigInterpolant(const RealField& f)
    : grid_(f.grid()), coeffs_(forward_raw(f.samples())) {}

TrigInterpolant::TrigInterpolant(const SpectralField& f_hat)
    : grid_(f_hat.grid()),
      coeffs_(f_hat.half_spectrum().begin(), f_hat.half_spectrum().end()) {}

double TrigInterpolant::value(double x) const { return derivative(x, 0); }

double TrigInterpolant::derivative(double x, int order) const {
  if (order < 0 || order > 4) throw InvalidArgument("TrigInterpolant: order must be in 0..4");
  const std::size_t half = grid_.n_points() / 2;
  double acc = order == 0 ? coeffs_[0].real() : 0.0;
  for (std::size_t k = 1; k < half; ++k) {
    const double xi = grid_.wavenumber(static_cast<long>(k));
    const std::complex<double> phase = std::polar(1.0, xi * x);
    const std::complex<double> factor = std::pow(std::complex<double>(0.0, xi), order);
    acc += 2.0 * (coeffs_[k] * factor * phase).real();
  }
  // Nyquist term c_{N/2} cos(xi x), real by construction.
  const double xin = grid_.wavenumber(static_cast<long>(half));
  const double cn = coeffs_[half].real();
  switch (order) {
    case 0: acc += cn * std::cos(xin * x); break;
    case 1: acc -= cn * xin * std::sin(xin * x); break;
    case 2: acc -= cn * xin * xin * std::cos(xin * x); break;
    case 3: acc += cn * xin * xin * xin * std::sin(xin * x); break;
    case 4: acc += cn * xin * xin * xin * xin * std::cos(xin * x); break;
    default: break;
  }
  return acc;
}

namespace {

/// Newton on g' inside [lo, hi] starting from x0; returns the refined point
/// (falls back to x0 if the iteration leaves the bracket).
double refine_extremum(const TrigInterpolant& g, double x0, double lo, double hi) {
  double x = x0;
  for (int it = 0; it < 30; ++it) {
    const double d1 = g.derivative(x, 1);
    const double d2 = g.derivative(x, 2);
    if (d2 == 0.0) break;
    const double step = d1 / d2;
    const double next = x - step;
    if (!(next > lo && next < hi)) return x0;
    x = next;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
  }
  return x;
}

/// Indices of the `count` largest entries of `key` that are local maxima (periodic).
std::vector<std::size_t> top_local_maxima(std::span<const double> key, std::size_t count) {
  const std::size_t n = key.size();
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; ++j) {
    const double l = key[(j + n - 1) % n], r = key[(j + 1) % n];
    if (key[j] >= l && key[j] >= r) idx.push_back(j);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return key[a] > key[b] || (key[a] == key[b] && a < b);
  });
  if (idx.size() > count) idx.resize(count);
  return idx;
}

}  // namespace

double sup_abs_interpolant(const RealField& f) {
  const double sample_max = f.max_abs();
  if (sample_max == 0.0) return 0.0;
  std::vector<double> key(f.size());
  for (std::size_t j = 0; j < key.size(); ++j) key[j] = std::abs(f[j]);
  const TrigInterpolant g(f);
  const double h = f.grid().spacing();
  double best = sample_max;
  for (std::size_t j : top_local_maxima(key, 4)) {
    const double x0 = f.grid().x(j);
    const double x = refine_extremum(g, x0, x0 - h, x0 + h);
    best = std::max(best, std::abs(g.value(x)));
  }
  return best;
}

Extremum min_interpolant(const RealField& f) {
  std::vector<double> key(f.size());
  for (std::size_t j = 0; j < key.size(); ++j) key[j] = -f[j];
  const TrigInterpolant g(f);
  const double h = f.grid().spacing();
  Extremum best{0.0, f[0]};
  std::size_t jmin = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] < f[jmin]) jmin = j;
  }
  best = {f.grid().x(jmin), f[jmin]};
  for (std::size_t j : top_local_maxima(key, 4)) {
    const double x0 = f.grid().x(j);
    const double x = refine_extremum(g, x0, x0 - h, x0 + h);
    const double v = g.value(x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

RealField random_band_limited(const PeriodicGrid& grid, std::size_t max_mode, double amplitude,
                              unsigned long seed, double decay) {
  if (max_mode == 0 || max_mode >= grid.n_points() / 2) {
    throw InvalidArgument("random_band_limited: max_mode must be in [1, N/2)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(max_mode + 1), b(max_mode + 1);
  for (std::size_t k = 1; k <= max_mode; ++k) {
    const double w = std::pow(static_cast<double>(k), -decay);
    a[k] = u(rng) * w;
    b[k] = u(rng) * w;
  }
  RealField f = RealField::sample(grid, [&](double x) {
    double s = 0.0;
    for (std::size_t k = 1; k <= max_mode; ++k) {
      const double xi = grid.wavenumber(static_cast<long>(k));
      s += a[k] * std::cos(xi * x) + b[k] * std::sin(xi * x);
    }
    return s;
  });
  const double m = f.max_abs();
  return (m > 0.0 ? amplitude / m : 0.0) * f.without_mean();
}

}  // namespace muskat
