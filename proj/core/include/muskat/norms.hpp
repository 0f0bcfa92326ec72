#pragma once

#include <cstddef>
#include <limits>

#include "muskat/grid.hpp"

namespace muskat {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Indices (s, p, q) of a homogeneous Besov seminorm computed from difference quotients.
/// First differences are used for s < 1, symmetric second differences for 1 <= s < 2.
struct BesovIndex {
  double s;
  double p;
  double q;

  /// Throws InvalidArgument unless 0 < s < 2 and p, q in [1, inf].
  BesovIndex(double s, double p, double q);

  int difference_order() const noexcept { return s < 1.0 ? 1 : 2; }
};

/// Monitored seminorms of one field at one instant. Sup-type entries are taken over the
/// trigonometric interpolant, not just the samples.
struct NormReport {
  double time = 0.0;
  double l_inf = 0.0;
  double l2 = 0.0;
  double lipschitz = 0.0;       // ||f_x||_inf
  double wiener1 = 0.0;         // A^1
  double hs_half = 0.0;
  double hs_one = 0.0;
  double hs_three_half = 0.0;
  double blowup_proxy = 0.0;    // ||f_xx||_inf + spectral tail of A^{5/2}
};

NormReport norm_report(const RealField& f, double time);

/// p = inf: max|samples|. Finite p: (spacing * sum |f_j|^p)^{1/p}. Throws for p < 1.
double norm_lp(const RealField& f, double p);

/// ||Lambda^s f||_{L2} over one period, evaluated by Parseval. Throws for s < 0.
double norm_homog_sobolev(const RealField& f, double s);

/// sum_{k != 0} |2 pi k / L|^alpha |c_k| with f = sum c_k exp(i 2 pi k x / L).
double norm_wiener(const RealField& f, double alpha);

/// Tail part of the blow-up proxy: sum over N/4 < |k| <= N/2 of |xi|^{5/2} |c_k|.
double spectral_holder_tail(const RealField& f);

struct BesovOptions {
  std::size_t shift_count = 128;
  /// Add the |y| > L/2 part of the full-line integral by summing periodic images.
  bool periodic_tail = true;
  /// Divide by the constant that makes a single Fourier mode e^{i xi x} have seminorm
  /// |xi|^s * ||e^{i xi x}||_p; with it, B^s_{2,2} coincides with H^s on the line.
  bool normalized = true;
};

double besov_seminorm(const RealField& f, const BesovIndex& idx, std::size_t shift_count);
double besov_seminorm(const RealField& f, const BesovIndex& idx, const BesovOptions& opts);

/// (2 * int_0^inf |m(u)|^q u^{-1-qs} du)^{1/q} for the difference symbol m, or
/// sup_u |m(u)| / u^s when q = inf.
double besov_normalization(const BesovIndex& idx);

/// ||f||_{B^{theta s1 + (1-theta) s2}_{p,1}} / (||f||^theta_{B^{s1}_{p,r}} ||f||^{1-theta}_{B^{s2}_{p,r}}).
double check_interpolation(const RealField& f, double s1, double s2, double theta, double p,
                           double r, std::size_t shift_count = 128);

/// ||[H, phi] d^k f||_{W^{l,p}} / (||phi||_{W^{k+l,inf}} ||f||_{L^p}); 0 when phi is constant.
/// Requires 1 < p < inf and k + l <= 2.
double commutator_ratio(const RealField& phi, const RealField& f, int k, int l, double p);

}  // namespace muskat
