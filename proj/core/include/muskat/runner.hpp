#pragma once

#include "muskat/config.hpp"
#include "muskat/run_log.hpp"

namespace muskat {

/// Evolves the graph from the configured initial data to t_final. Steps are shortened to land
/// on report and snapshot instants. Numerical failures end the run with a halt status instead
/// of throwing, so the partial log can still be persisted.
RunLog run_graph(const SimConfig& cfg);

/// Curve evolution with explicit RK4; logs the turning indicator at every report and stops at
/// the first step where it drops to zero or below (turning_time is interpolated in the step).
RunLog run_curve(const SimConfig& cfg);

/// Dispatches on cfg.mode; verify runs the graph evolution. Throws ConfigError for other modes.
RunLog run_simulation(const SimConfig& cfg);

/// Time cap for rho_bar <= 0 runs: 10 * spacing / |rho_bar|.
double unstable_time_cap(const SimConfig& cfg);

}  // namespace muskat
