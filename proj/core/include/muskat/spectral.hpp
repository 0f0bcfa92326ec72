#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

SpectralField forward_transform(const RealField& f);
RealField inverse_transform(const SpectralField& f_hat);

/// Multiplies every mode k >= 0 by m(k, xi_k) and transforms back. The Nyquist
/// coefficient is multiplied by the real part of m, which keeps the result real.
using Multiplier = std::function<std::complex<double>(long k, double xi)>;
RealField apply_multiplier(const RealField& f, const Multiplier& m);

/// Lambda^s = (-Delta)^{s/2}, multiplier |xi|^s with 0^s := 0 for s > 0.
/// Throws InvalidArgument for s < 0.
RealField apply_lambda_s(const RealField& f, double s);

/// Hilbert transform, multiplier -i sgn(xi). The Nyquist mode is zeroed.
RealField hilbert(const RealField& f);

/// Spectral derivative of order 1..4, multiplier (i xi)^order. Odd orders zero the Nyquist mode.
RealField derivative(const RealField& f, int order);

/// Translation f(x - shift) by Fourier phase; the shift need not be a grid multiple.
RealField translate(const RealField& f, double shift);

/// Spectral resampling onto another grid of the same length (truncates or zero-pads modes).
RealField resample(const RealField& f, const PeriodicGrid& target);

/// Trigonometric interpolant of the samples evaluated at arbitrary points.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const RealField& f);
  TrigInterpolant(const SpectralField& f_hat);

  double value(double x) const;
  /// d^order/dx^order of the interpolant at x (order 0..4).
  double derivative(double x, int order) const;

 private:
  PeriodicGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Location and value of an extremum of the trigonometric interpolant.
struct Extremum {
  double x;
  double value;
};

/// sup |f| over the continuous interpolant: the largest samples are refined by Newton
/// iteration on f'. Never smaller than max|samples|.
double sup_abs_interpolant(const RealField& f);

/// Minimum of the interpolant, refined around the smallest samples.
Extremum min_interpolant(const RealField& f);

/// Random band-limited, mean-zero field; mode k in [1, max_mode] gets an amplitude
/// ~ U(-1,1) / k^decay for both cosine and sine parts, then the field is scaled to
/// max|f| = amplitude. Deterministic in `seed`.
RealField random_band_limited(const PeriodicGrid& grid, std::size_t max_mode, double amplitude,
                              unsigned long seed, double decay = 1.0);

}  // namespace muskat
