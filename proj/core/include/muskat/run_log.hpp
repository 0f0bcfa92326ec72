#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "muskat/norms.hpp"

namespace muskat {

enum class RunKind { Graph, Curve };

enum class RunStatus {
  Completed,
  UnstableCapReached,         ///< rho_bar <= 0 run stopped at its illustrative time cap
  BlowupSuspected,
  SelfIntersectionSuspected,
  TurningDetected,
  ParametrizationDegraded,    ///< max|z'| / min|z'| exceeded 20
  NumericalError,
};

std::string to_string(RunKind k);
std::string to_string(RunStatus s);
RunKind run_kind_from_string(const std::string& s);    ///< throws SchemaError
RunStatus run_status_from_string(const std::string& s);  ///< throws SchemaError

/// True for the statuses that end a run early on a numerical criterion (CLI exit code 2).
bool is_numerical_halt(RunStatus s);

/// Parameters the diagnostics need, echoed next to the verbatim configuration text.
struct RunMeta {
  RunKind kind = RunKind::Graph;
  std::size_t n_points = 0;
  double length = 0.0;
  double rho_bar = 0.0;
  bool unstable = false;
  double t_final = 0.0;
  double blowup_threshold = 0.0;
  double inner_cut = 0.5;
  double alpha_max = 0.0;
  bool periodized = true;
  std::string config_format;  ///< "json" or "toml"
  std::string config_text;    ///< source file, verbatim
};

struct FieldSnapshot {
  double time = 0.0;
  std::vector<double> x;
  std::vector<double> f;
};

struct CurveSnapshot {
  double time = 0.0;
  std::vector<double> alpha;
  std::vector<double> z1;
  std::vector<double> z2;
};

struct TurningSample {
  double time = 0.0;
  double indicator = 0.0;
};

struct RunLog {
  RunMeta meta;
  std::vector<NormReport> reports;
  std::vector<FieldSnapshot> snapshots;
  std::vector<CurveSnapshot> curve_snapshots;
  std::vector<TurningSample> turning;

  RunStatus status = RunStatus::Completed;
  std::string message;
  double final_time = 0.0;
  std::optional<double> turning_time;
  std::optional<double> blowup_time;
  std::optional<double> initial_turning_indicator;
  std::optional<double> initial_dalpha_v1;
};

/// Directory layout: config.json, norms.csv, snapshots/t_<time>.csv, status.json and, for
/// curve runs, turning.csv. Numbers carry 17 significant digits.
void write_run_log(const RunLog& log, const std::filesystem::path& dir);

/// Throws SchemaError when a file is missing or does not match the layout.
RunLog read_run_log(const std::filesystem::path& dir);

/// Field CSV with header "x,f" on a uniform grid starting anywhere. Throws SchemaError.
FieldSnapshot read_field_csv(const std::filesystem::path& path);
void write_field_csv(const FieldSnapshot& snap, const std::filesystem::path& path);

inline constexpr const char* kNormsHeader =
    "time,l_inf,l2,lipschitz,wiener1,hs_half,hs_one,hs_three_half,blowup_proxy";

/// 17 significant digits.
std::string format_double(double v);

}  // namespace muskat
