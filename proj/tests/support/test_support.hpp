#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

#include "muskat/grid.hpp"

namespace muskat::testing {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("muskat_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

inline double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel_diff(const RealField& a, const RealField& b) {
  const double s = std::max(a.max_abs(), b.max_abs());
  return s > 0.0 ? max_abs_diff(a, b) / s : 0.0;
}

inline RealField cosine(const PeriodicGrid& g, double amp, double k) {
  return RealField::sample(g, [=](double x) { return amp * std::cos(k * x); });
}

inline RealField sine(const PeriodicGrid& g, double amp, double k) {
  return RealField::sample(g, [=](double x) { return amp * std::sin(k * x); });
}

}  // namespace muskat::testing
