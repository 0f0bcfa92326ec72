#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace muskat {

/// Uniform sample grid x_j = j * spacing, j = 0..n-1, on a torus of period `length`.
class PeriodicGrid {
 public:
  /// Throws InvalidArgument unless n_points >= 8 is a power of two and length > 0.
  PeriodicGrid(std::size_t n_points, double length);

  std::size_t n_points() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(n_); }
  double x(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }

  /// Angular wavenumber 2*pi*k/L of integer mode k.
  double wavenumber(long k) const noexcept;

  /// Largest mode index kept by odd multipliers (the Nyquist mode N/2 is excluded).
  std::size_t nyquist() const noexcept { return n_ / 2; }

  friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

 private:
  std::size_t n_;
  double length_;
};

/// Real samples of a periodic function on a PeriodicGrid.
class RealField {
 public:
  RealField(PeriodicGrid grid, std::vector<double> samples, bool mean_removed = false);

  /// Samples a callable f(x) at the grid nodes.
  template <class F>
  static RealField sample(const PeriodicGrid& grid, F&& f) {
    std::vector<double> v(grid.n_points());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
    return RealField(grid, std::move(v));
  }

  static RealField zeros(const PeriodicGrid& grid);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool mean_removed() const noexcept { return mean_removed_; }

  double mean() const noexcept;
  double max_abs() const noexcept;

  /// Copy with the discrete mean subtracted and the flag set.
  RealField without_mean() const;

  /// True when the discrete mean is negligible relative to max|samples|.
  bool has_zero_mean(double rel_tol = 1e-12) const noexcept;

  std::vector<double> release() && { return std::move(samples_); }

 private:
  PeriodicGrid grid_;
  std::vector<double> samples_;
  bool mean_removed_;
};

RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);

/// Fourier-series coefficients c_k of f(x) = sum_k c_k exp(i 2 pi k x / L).
///
/// Only k = 0..N/2 are stored; negative modes follow from Hermitian symmetry.
class SpectralField {
 public:
  SpectralField(PeriodicGrid grid, std::vector<std::complex<double>> half_spectrum);

  const PeriodicGrid& grid() const noexcept { return grid_; }

  /// Coefficient for any k in [-N/2, N/2]; the Nyquist mode is real.
  std::complex<double> coefficient(long k) const;

  std::span<const std::complex<double>> half_spectrum() const noexcept { return coeffs_; }
  std::vector<std::complex<double>>& mutable_half_spectrum() noexcept { return coeffs_; }

  /// L * sum_k |c_k|^2, which equals the squared L2 norm over one period.
  double parseval_energy() const noexcept;

 private:
  PeriodicGrid grid_;
  std::vector<std::complex<double>> coeffs_;
};

}  // namespace muskat
