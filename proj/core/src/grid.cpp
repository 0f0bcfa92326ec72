#include "muskat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "muskat/errors.hpp"

namespace muskat {

PeriodicGrid::PeriodicGrid(std::size_t n_points, double length) : n_(n_points), length_(length) {
  if (n_points < 8 || (n_points & (n_points - 1)) != 0) {
    throw InvalidArgument("PeriodicGrid: n_points must be a power of two >= 8, got " +
                          std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("PeriodicGrid: length must be positive and finite");
  }
}

double PeriodicGrid::wavenumber(long k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / length_;
}

RealField::RealField(PeriodicGrid grid, std::vector<double> samples, bool mean_removed)
    : grid_(grid), samples_(std::move(samples)), mean_removed_(mean_removed) {
  if (samples_.size() != grid_.n_points()) {
    throw InvalidArgument("RealField: expected " + std::to_string(grid_.n_points()) +
                          " samples, got " + std::to_string(samples_.size()));
  }
  if (mean_removed_ && !has_zero_mean(1e-12)) {
    // Tolerate callers that flag a field whose mean is only approximately zero.
    const double m = mean();
    for (double& v : samples_) v -= m;
  }
}

RealField RealField::zeros(const PeriodicGrid& grid) {
  return RealField(grid, std::vector<double>(grid.n_points(), 0.0), true);
}

double RealField::mean() const noexcept {
  // Pairwise to keep the mean stable for long vectors.
  std::vector<double> buf(samples_);
  std::size_t n = buf.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2) buf[half] = buf[n - 1];
    n = half + n % 2;
  }
  return buf[0] / static_cast<double>(samples_.size());
}

double RealField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

RealField RealField::without_mean() const {
  const double m = mean();
  std::vector<double> v(samples_);
  for (double& s : v) s -= m;
  return RealField(grid_, std::move(v), true);
}

bool RealField::has_zero_mean(double rel_tol) const noexcept {
  const double scale = max_abs();
  return std::abs(mean()) <= rel_tol * scale || scale == 0.0;
}

namespace {
void check_same_grid(const RealField& a, const RealField& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("RealField arithmetic on different grids");
}
}  // namespace

RealField operator+(const RealField& a, const RealField& b) {
  check_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return RealField(a.grid(), std::move(v));
}

RealField operator-(const RealField& a, const RealField& b) {
  check_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return RealField(a.grid(), std::move(v));
}

RealField operator*(double s, const RealField& a) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a[i];
  return RealField(a.grid(), std::move(v), a.mean_removed());
}

SpectralField::SpectralField(PeriodicGrid grid, std::vector<std::complex<double>> half_spectrum)
    : grid_(grid), coeffs_(std::move(half_spectrum)) {
  if (coeffs_.size() != grid_.n_points() / 2 + 1) {
    throw InvalidArgument("SpectralField: half spectrum must hold N/2+1 coefficients");
  }
}

std::complex<double> SpectralField::coefficient(long k) const {
  const long half = static_cast<long>(grid_.n_points() / 2);
  if (k < -half || k > half) throw InvalidArgument("SpectralField: wavenumber out of range");
  if (k >= 0) return coeffs_[static_cast<std::size_t>(k)];
  return std::conj(coeffs_[static_cast<std::size_t>(-k)]);
}

double SpectralField::parseval_energy() const noexcept {
  const std::size_t half = grid_.n_points() / 2;
  double acc = std::norm(coeffs_[0]) + std::norm(coeffs_[half]);
  for (std::size_t k = 1; k < half; ++k) acc += 2.0 * std::norm(coeffs_[k]);
  return grid_.length() * acc;
}

}  // namespace muskat
