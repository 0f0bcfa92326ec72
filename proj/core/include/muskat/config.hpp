#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "muskat/curve.hpp"
#include "muskat/graph.hpp"
#include "muskat/oracle.hpp"

namespace muskat {

enum class Mode { Graph, Curve, Norms, Verify, Convergence };

enum class InitialKind { Zero, Cosine, SlopeProfile, TurningProfile, FromCsv, RandomBandLimited };

/// Initial interface. Graph kinds are mapped to z = (alpha, f) for curve runs.
struct InitialData {
  InitialKind kind = InitialKind::Zero;
  double amplitude = 0.0;    ///< cosine / random: max|f|; turning: height of the sin(3 alpha) term
  int wavenumber = 1;        ///< cosine: mode index on the torus
  double slope = 0.0;        ///< slope_profile: max|f'|
  double steepness = 0.0;    ///< turning_profile: z1 = alpha - steepness sin(alpha)
  std::string path;          ///< from_csv
  int max_mode = 8;          ///< random
};

struct SimConfig {
  Mode mode = Mode::Graph;
  std::size_t n_points = 256;
  double length = 6.283185307179586;
  double rho_bar = 3.141592653589793;
  double t_final = 0.0;
  double cfl_factor = 0.3;
  TimeScheme scheme = TimeScheme::Rk4IntegratingFactor;
  FluxForm flux_form = FluxForm::Rational;
  QuadratureSpec quad{};
  InitialData initial_data{};
  double report_interval = 0.0;    ///< defaults to t_final / 50
  double snapshot_interval = 0.0;  ///< defaults to t_final / 10
  double blowup_threshold = 1e4;
  bool unstable = false;
  std::string output_dir = "run_output";
  std::uint64_t seed = 0;
  double chord_arc_floor = 1e-3;
  double critical_tol = 0.1;
  std::vector<std::size_t> resolutions{32, 64, 128, 256};
  ConvergenceMethod convergence_method = ConvergenceMethod::FastRational;

  std::string source_format = "json";
  std::string source_text;
};

/// Reads a .json or .toml file (by extension; anything else is tried as JSON).
/// Throws ConfigError naming the offending field.
SimConfig parse_config(const std::filesystem::path& path);
SimConfig parse_config_text(const std::string& text, const std::string& format);

/// Checks the cross-field invariants; parse_config calls it. Throws ConfigError.
void validate(const SimConfig& cfg);

/// Initial height on the configured grid (graph kinds only; throws ConfigError otherwise).
RealField make_initial_field(const SimConfig& cfg);
InterfaceCurve make_initial_curve(const SimConfig& cfg);

/// A*sin(x) exp(cos(x)) on the torus, scaled so that max|f'| = slope on the interpolant.
RealField slope_profile(const PeriodicGrid& grid, double slope);
/// z1 = alpha - steepness sin(alpha), z2 = amplitude sin(3 alpha) (alpha scaled to the period).
InterfaceCurve turning_profile(const PeriodicGrid& grid, double steepness, double amplitude, double rho_bar);

std::string to_string(Mode m);

}  // namespace muskat
