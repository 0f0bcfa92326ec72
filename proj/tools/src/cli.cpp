#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "muskat/config.hpp"
#include "muskat/diagnostics.hpp"
#include "muskat/errors.hpp"
#include "muskat/norms.hpp"
#include "muskat/oracle.hpp"
#include "muskat/parallel.hpp"
#include "muskat/runner.hpp"

namespace muskat::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json report_json(const NormReport& r) { return json::parse(norm_report_to_json(r)); }

json status_json(const RunLog& log, const fs::path& dir) {
  json j = {{"status", to_string(log.status)},
            {"final_time", log.final_time},
            {"message", log.message},
            {"output_dir", dir.string()}};
  if (log.turning_time) j["turning_time"] = *log.turning_time;
  if (log.blowup_time) j["blowup_time"] = *log.blowup_time;
  return j;
}

json convergence_json(const SimConfig& cfg) {
  const ConvergenceReport rep =
      convergence_study(make_initial_field(cfg), cfg.resolutions, cfg.rho_bar, cfg.convergence_method, cfg.quad);
  json j = {{"resolutions", rep.resolutions}, {"errors", rep.errors}};
  // JSON has no infinity; a rate limited by roundoff is reported as null.
  j["rate"] = std::isfinite(rep.rate) ? json(rep.rate) : json(nullptr);
  return j;
}

json norms_of_log(const RunLog& log) {
  json arr = json::array();
  if (log.meta.kind == RunKind::Graph) {
    const PeriodicGrid grid(log.meta.n_points, log.meta.length);
    for (const FieldSnapshot& s : log.snapshots) arr.push_back(report_json(norm_report(RealField(grid, s.f), s.time)));
  } else {
    for (const NormReport& r : log.reports) arr.push_back(report_json(r));
  }
  return arr;
}

/// NormReport of a single "x,f" CSV field; the period is n times the sample spacing.
json norms_of_csv(const fs::path& path) {
  const FieldSnapshot snap = read_field_csv(path);
  const double length = static_cast<double>(snap.x.size()) * (snap.x[1] - snap.x[0]);
  const PeriodicGrid grid(snap.x.size(), length);
  return report_json(norm_report(RealField(grid, snap.f).without_mean(), snap.time));
}

/// Runs a graph or curve simulation and persists the log; exit code follows the final status.
int simulate(SimConfig cfg, const std::string& output, std::ostream& out) {
  if (!output.empty()) cfg.output_dir = output;
  const RunLog log = run_simulation(cfg);
  write_run_log(log, cfg.output_dir);
  out << status_json(log, cfg.output_dir).dump(2) << '\n';
  return is_numerical_halt(log.status) ? kExitNumericalHalt : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Muskat interface simulator and verification lab"};
  app.require_subcommand(1);

  std::string config_path, log_dir, output;

  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a configuration file");
  run_cmd->add_option("--config", config_path, "TOML or JSON configuration")->required();
  run_cmd->add_option("--output", output, "Override output_dir");

  auto* norms_cmd = app.add_subcommand("norms", "Norm report of the initial data or of every logged snapshot");
  auto* norms_cfg = norms_cmd->add_option("--config", config_path, "Configuration whose initial data is measured");
  auto* norms_log = norms_cmd->add_option("--log", log_dir, "RunLog directory, or a single x,f CSV field");
  norms_cfg->excludes(norms_log);
  norms_cmd->require_option(1);

  auto* verify_cmd = app.add_subcommand("verify", "Theorem verdicts for a RunLog, as JSON");
  auto* verify_log = verify_cmd->add_option("--log", log_dir, "RunLog directory");
  auto* verify_cfg = verify_cmd->add_option("--config", config_path, "Run this configuration first, then verify");
  verify_cmd->add_option("--output", output, "Override output_dir when running --config");
  verify_log->excludes(verify_cfg);
  verify_cmd->require_option(1, 2);

  auto* conv_cmd = app.add_subcommand("convergence", "Flux convergence study of the initial data");
  conv_cmd->add_option("--config", config_path, "Configuration with resolutions and method")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  configure_threads_from_env();

  try {
    if (run_cmd->parsed()) {
      SimConfig cfg = parse_config(config_path);
      switch (cfg.mode) {
        case Mode::Graph:
        case Mode::Curve:
          return simulate(cfg, output, out);
        case Mode::Norms:
          out << report_json(norm_report(make_initial_field(cfg), 0.0)).dump(2) << '\n';
          return kExitOk;
        case Mode::Convergence:
          out << convergence_json(cfg).dump(2) << '\n';
          return kExitOk;
        case Mode::Verify: {
          if (!output.empty()) cfg.output_dir = output;
          const RunLog log = run_simulation(cfg);
          write_run_log(log, cfg.output_dir);
          out << verdicts_to_json(verify_all(log)) << '\n';
          return is_numerical_halt(log.status) ? kExitNumericalHalt : kExitOk;
        }
      }
    }
    if (norms_cmd->parsed()) {
      if (!log_dir.empty() && fs::is_regular_file(log_dir)) {
        out << norms_of_csv(log_dir).dump(2) << '\n';
      } else if (!log_dir.empty()) {
        out << norms_of_log(read_run_log(log_dir)).dump(2) << '\n';
      } else {
        out << report_json(norm_report(make_initial_field(parse_config(config_path)), 0.0)).dump(2) << '\n';
      }
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      int code = kExitOk;
      fs::path dir = log_dir;
      if (!config_path.empty()) {
        SimConfig cfg = parse_config(config_path);
        if (!output.empty()) cfg.output_dir = output;
        const RunLog log = run_simulation(cfg);
        write_run_log(log, cfg.output_dir);
        dir = cfg.output_dir;
        if (is_numerical_halt(log.status)) code = kExitNumericalHalt;
      }
      out << verdicts_to_json(verify_all(read_run_log(dir))) << '\n';
      return code;
    }
    if (conv_cmd->parsed()) {
      out << convergence_json(parse_config(config_path)).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SchemaError& e) {
    err << "run log error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const MuskatError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalHalt;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace muskat::cli
