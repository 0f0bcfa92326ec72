#include "muskat/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "muskat/curve.hpp"
#include "muskat/errors.hpp"
#include "muskat/graph.hpp"
#include "muskat/norms.hpp"

namespace muskat {

namespace {

RunMeta make_meta(const SimConfig& cfg, RunKind kind) {
  RunMeta m;
  m.kind = kind;
  m.n_points = cfg.n_points;
  m.length = cfg.length;
  m.rho_bar = cfg.rho_bar;
  m.unstable = cfg.unstable;
  m.t_final = cfg.t_final;
  m.blowup_threshold = cfg.blowup_threshold;
  m.inner_cut = cfg.quad.inner_cut;
  m.alpha_max = cfg.quad.effective_alpha_max(PeriodicGrid(cfg.n_points, cfg.length));
  m.periodized = cfg.quad.periodized;
  m.config_format = cfg.source_format;
  m.config_text = cfg.source_text;
  return m;
}

/// Report and snapshot instants k * interval, plus the end time.
class EventClock {
 public:
  EventClock(double report, double snapshot, double t_end)
      : report_(report), snapshot_(snapshot), t_end_(t_end), tol_(1e-12 * std::max(1.0, t_end)) {}

  double next_event(double t) const {
    return std::min({next_multiple(report_, t), next_multiple(snapshot_, t), t_end_});
  }
  bool is_report(double t) const { return on_multiple(report_, t) || is_end(t); }
  bool is_snapshot(double t) const { return on_multiple(snapshot_, t) || is_end(t); }
  bool is_end(double t) const { return t >= t_end_ - tol_; }
  /// Snaps t onto an event instant when it is within rounding distance of one.
  double snap(double t) const {
    for (double iv : {report_, snapshot_}) {
      const double k = std::round(t / iv);
      if (std::abs(t - k * iv) <= tol_) return k * iv;
    }
    return std::abs(t - t_end_) <= tol_ ? t_end_ : t;
  }

 private:
  double next_multiple(double iv, double t) const {
    double k = std::floor(t / iv + 1e-9) + 1.0;
    return k * iv;
  }
  bool on_multiple(double iv, double t) const {
    return std::abs(t - std::round(t / iv) * iv) <= tol_;
  }

  double report_, snapshot_, t_end_, tol_;
};

FieldSnapshot field_snapshot(const RealField& f, double t) {
  FieldSnapshot s;
  s.time = t;
  s.x.resize(f.size());
  s.f.assign(f.samples().begin(), f.samples().end());
  for (std::size_t j = 0; j < f.size(); ++j) s.x[j] = f.grid().x(j);
  return s;
}

CurveSnapshot curve_snapshot(const InterfaceCurve& c) {
  CurveSnapshot s;
  s.time = c.time;
  s.alpha.resize(c.z1.size());
  for (std::size_t j = 0; j < s.alpha.size(); ++j) s.alpha[j] = c.grid.x(j);
  s.z1 = c.z1;
  s.z2 = c.z2;
  return s;
}

}  // namespace

double unstable_time_cap(const SimConfig& cfg) {
  if (cfg.rho_bar > 0.0) return std::numeric_limits<double>::infinity();
  if (cfg.rho_bar == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * (cfg.length / static_cast<double>(cfg.n_points)) / std::abs(cfg.rho_bar);
}

RunLog run_graph(const SimConfig& cfg) {
  validate(cfg);
  RunLog log;
  log.meta = make_meta(cfg, RunKind::Graph);

  const double cap = unstable_time_cap(cfg);
  const double t_end = std::min(cfg.t_final, cap);
  const EventClock clock(cfg.report_interval, cfg.snapshot_interval, t_end);

  StepOptions opts;
  opts.scheme = cfg.scheme;
  opts.quad = cfg.quad;
  opts.form = cfg.flux_form;
  opts.cfl_factor = cfg.cfl_factor;

  GraphState state(make_initial_field(cfg), 0.0, cfg.rho_bar, cfg.unstable);

  // Returns false when the run must stop.
  const auto record = [&](const GraphState& s) {
    const bool report = clock.is_report(s.time);
    if (clock.is_snapshot(s.time)) log.snapshots.push_back(field_snapshot(s.f, s.time));
    if (!report) return true;
    const NormReport r = norm_report(s.f, s.time);
    log.reports.push_back(r);
    if (r.blowup_proxy > cfg.blowup_threshold) {
      log.status = RunStatus::BlowupSuspected;
      log.blowup_time = s.time;
      log.message = "blowup_proxy " + format_double(r.blowup_proxy) + " exceeded threshold " +
                    format_double(cfg.blowup_threshold);
      if (!clock.is_snapshot(s.time)) log.snapshots.push_back(field_snapshot(s.f, s.time));
      return false;
    }
    return true;
  };

  bool running = record(state);
  try {
    while (running && !clock.is_end(state.time)) {
      const double target = clock.next_event(state.time);
      const double dt = std::min(cfl_dt(state, cfg.cfl_factor), target - state.time);
      GraphState next = step(state, dt, opts);
      next.time = clock.snap(next.time);
      state = std::move(next);
      running = record(state);
    }
  } catch (const MuskatError& e) {
    log.status = RunStatus::NumericalError;
    log.message = e.what();
  }
  log.final_time = state.time;
  if (log.status == RunStatus::Completed && cap < cfg.t_final) {
    log.status = RunStatus::UnstableCapReached;
    log.message = "rho_bar <= 0: run capped at 10 grid-crossing times (t = " + format_double(cap) + ")";
  }
  return log;
}

RunLog run_curve(const SimConfig& cfg) {
  validate(cfg);
  RunLog log;
  log.meta = make_meta(cfg, RunKind::Curve);

  const double cap = unstable_time_cap(cfg);
  const double t_end = std::min(cfg.t_final, cap);
  const EventClock clock(cfg.report_interval, cfg.snapshot_interval, t_end);

  InterfaceCurve curve = make_initial_curve(cfg);
  double indicator = turning_indicator(curve);
  log.initial_turning_indicator = indicator;
  try {
    log.initial_dalpha_v1 = dalpha_v1_at_critical(curve, cfg.quad, cfg.critical_tol);
  } catch (const NoCriticalPoint&) {
  } catch (const MuskatError& e) {
    log.message = std::string("initial critical point: ") + e.what();
  }

  const auto record = [&](const InterfaceCurve& c, double ind, bool force) {
    if (force || clock.is_snapshot(c.time)) log.curve_snapshots.push_back(curve_snapshot(c));
    if (force || clock.is_report(c.time)) {
      log.reports.push_back(norm_report(c.height(), c.time));
      log.turning.push_back({c.time, ind});
    }
  };

  const auto halt = [&](RunStatus s, const std::string& msg) {
    log.status = s;
    log.message = msg;
  };

  record(curve, indicator, false);
  if (indicator <= 0.0) {
    log.turning_time = 0.0;
    halt(RunStatus::TurningDetected, "initial curve is not a graph");
  } else if (parametrization_ratio(curve) > 20.0) {
    halt(RunStatus::ParametrizationDegraded, "initial max|z'|/min|z'| exceeds 20");
  }
  try {
    while (log.status == RunStatus::Completed && !clock.is_end(curve.time)) {
      const double target = clock.next_event(curve.time);
      const double dt = std::min(curve_cfl_dt(curve, cfg.cfl_factor), target - curve.time);
      InterfaceCurve next = step_curve(curve, dt, cfg.quad, cfg.cfl_factor, cfg.chord_arc_floor);
      next.time = clock.snap(next.time);
      const double next_ind = turning_indicator(next);
      const double t_prev = curve.time;
      curve = std::move(next);
      if (next_ind <= 0.0) {
        log.turning_time = t_prev + dt * indicator / (indicator - next_ind);
        halt(RunStatus::TurningDetected, "turning indicator crossed zero");
        record(curve, next_ind, true);
        break;
      }
      indicator = next_ind;
      if (parametrization_ratio(curve) > 20.0) {
        halt(RunStatus::ParametrizationDegraded, "max|z'|/min|z'| exceeded 20");
        record(curve, indicator, true);
        break;
      }
      record(curve, indicator, false);
    }
  } catch (const ChordArcViolation& e) {
    halt(RunStatus::SelfIntersectionSuspected, e.what());
    record(curve, indicator, true);
  } catch (const MuskatError& e) {
    halt(RunStatus::NumericalError, e.what());
  }
  log.final_time = curve.time;
  if (log.status == RunStatus::Completed && cap < cfg.t_final) {
    log.status = RunStatus::UnstableCapReached;
    log.message = "rho_bar <= 0: run capped at 10 grid-crossing times (t = " + format_double(cap) + ")";
  }
  return log;
}

RunLog run_simulation(const SimConfig& cfg) {
  switch (cfg.mode) {
    case Mode::Graph:
    case Mode::Verify:
      return run_graph(cfg);
    case Mode::Curve:
      return run_curve(cfg);
    default:
      break;
  }
  throw ConfigError("mode", "run needs mode = graph, curve or verify, got " + to_string(cfg.mode));
}

}  // namespace muskat
