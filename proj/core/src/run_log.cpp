#include "muskat/run_log.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "muskat/errors.hpp"

namespace muskat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::pair<RunStatus, const char*>, 7> kStatusNames{{
    {RunStatus::Completed, "Completed"},
    {RunStatus::UnstableCapReached, "UnstableCapReached"},
    {RunStatus::BlowupSuspected, "BlowupSuspected"},
    {RunStatus::SelfIntersectionSuspected, "SelfIntersectionSuspected"},
    {RunStatus::TurningDetected, "TurningDetected"},
    {RunStatus::ParametrizationDegraded, "ParametrizationDegraded"},
    {RunStatus::NumericalError, "NumericalError"},
}};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MuskatError("cannot write " + path.string());
  out << text;
  if (!out) throw MuskatError("write failed for " + path.string());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& cell, const fs::path& path, std::size_t line) {
  const char* b = cell.data();
  const char* e = b + cell.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\t')) --e;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) {
    throw SchemaError(path.string() + ":" + std::to_string(line) + ": not a number: '" + cell + "'");
  }
  return v;
}

/// Rows of a CSV whose first line must equal `header`.
std::vector<std::vector<double>> read_csv(const fs::path& path, const std::string& header) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw SchemaError(path.string() + ": header '" + line + "' does not match '" + header + "'");
  }
  const std::size_t cols = split(header, ',').size();
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != cols) {
      throw SchemaError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(cols) + " columns");
    }
    std::vector<double> row(cols);
    for (std::size_t c = 0; c < cols; ++c) row[c] = parse_double(cells[c], path, lineno);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "t_%.9f.csv", t);
  return buf;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

template <class T>
T required(const json& j, const char* key, const fs::path& path) {
  if (!j.contains(key)) throw SchemaError(path.string() + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": bad value for '" + key + "': " + e.what());
  }
}

json parse_json_file(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_string(RunKind k) { return k == RunKind::Graph ? "graph" : "curve"; }

std::string to_string(RunStatus s) {
  for (const auto& [st, name] : kStatusNames) {
    if (st == s) return name;
  }
  return "NumericalError";
}

RunKind run_kind_from_string(const std::string& s) {
  if (s == "graph") return RunKind::Graph;
  if (s == "curve") return RunKind::Curve;
  throw SchemaError("unknown run kind '" + s + "'");
}

RunStatus run_status_from_string(const std::string& s) {
  for (const auto& [st, name] : kStatusNames) {
    if (s == name) return st;
  }
  throw SchemaError("unknown run status '" + s + "'");
}

bool is_numerical_halt(RunStatus s) {
  return s == RunStatus::BlowupSuspected || s == RunStatus::SelfIntersectionSuspected ||
         s == RunStatus::TurningDetected || s == RunStatus::ParametrizationDegraded ||
         s == RunStatus::NumericalError;
}

void write_field_csv(const FieldSnapshot& snap, const fs::path& path) {
  std::string text = "x,f\n";
  for (std::size_t i = 0; i < snap.x.size(); ++i) {
    text += format_double(snap.x[i]) + "," + format_double(snap.f[i]) + "\n";
  }
  write_text(path, text);
}

FieldSnapshot read_field_csv(const fs::path& path) {
  const auto rows = read_csv(path, "x,f");
  if (rows.size() < 2) throw SchemaError(path.string() + ": need at least two rows");
  FieldSnapshot snap;
  for (const auto& r : rows) {
    snap.x.push_back(r[0]);
    snap.f.push_back(r[1]);
  }
  const double h = snap.x[1] - snap.x[0];
  if (!(h > 0.0)) throw SchemaError(path.string() + ": x must increase");
  for (std::size_t i = 1; i < snap.x.size(); ++i) {
    if (std::abs(snap.x[i] - snap.x[0] - static_cast<double>(i) * h) > 1e-9 * h * static_cast<double>(snap.x.size())) {
      throw SchemaError(path.string() + ": x is not uniformly spaced");
    }
  }
  return snap;
}

void write_run_log(const RunLog& log, const fs::path& dir) {
  fs::create_directories(dir / "snapshots");

  const RunMeta& m = log.meta;
  json cfg = {
      {"kind", to_string(m.kind)},
      {"n_points", m.n_points},
      {"length", m.length},
      {"rho_bar", m.rho_bar},
      {"unstable", m.unstable},
      {"t_final", m.t_final},
      {"blowup_threshold", m.blowup_threshold},
      {"inner_cut", m.inner_cut},
      {"alpha_max", m.alpha_max},
      {"periodized", m.periodized},
      {"config_format", m.config_format},
      {"config_text", m.config_text},
  };
  write_text(dir / "config.json", cfg.dump(2) + "\n");

  std::string norms = std::string(kNormsHeader) + "\n";
  for (const NormReport& r : log.reports) {
    for (double v : {r.time, r.l_inf, r.l2, r.lipschitz, r.wiener1, r.hs_half, r.hs_one, r.hs_three_half}) {
      norms += format_double(v) + ",";
    }
    norms += format_double(r.blowup_proxy) + "\n";
  }
  write_text(dir / "norms.csv", norms);

  for (const auto& entry : fs::directory_iterator(dir / "snapshots")) {
    if (entry.path().extension() == ".csv") fs::remove(entry.path());
  }
  for (const FieldSnapshot& s : log.snapshots) {
    write_field_csv(s, dir / "snapshots" / snapshot_name(s.time));
  }
  for (const CurveSnapshot& s : log.curve_snapshots) {
    std::string text = "alpha,z1,z2\n";
    for (std::size_t i = 0; i < s.alpha.size(); ++i) {
      text += format_double(s.alpha[i]) + "," + format_double(s.z1[i]) + "," + format_double(s.z2[i]) + "\n";
    }
    write_text(dir / "snapshots" / snapshot_name(s.time), text);
  }

  if (m.kind == RunKind::Curve) {
    std::string text = "time,turning_indicator\n";
    for (const TurningSample& t : log.turning) {
      text += format_double(t.time) + "," + format_double(t.indicator) + "\n";
    }
    write_text(dir / "turning.csv", text);
  }

  json status = {
      {"status", to_string(log.status)},
      {"message", log.message},
      {"final_time", log.final_time},
      {"turning_time", optional_json(log.turning_time)},
      {"blowup_time", optional_json(log.blowup_time)},
      {"initial_turning_indicator", optional_json(log.initial_turning_indicator)},
      {"initial_dalpha_v1", optional_json(log.initial_dalpha_v1)},
  };
  write_text(dir / "status.json", status.dump(2) + "\n");
}

RunLog read_run_log(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw SchemaError(dir.string() + ": not a run log directory");
  RunLog log;

  const fs::path cfg_path = dir / "config.json";
  const json cfg = parse_json_file(cfg_path);
  RunMeta& m = log.meta;
  m.kind = run_kind_from_string(required<std::string>(cfg, "kind", cfg_path));
  m.n_points = required<std::size_t>(cfg, "n_points", cfg_path);
  m.length = required<double>(cfg, "length", cfg_path);
  m.rho_bar = required<double>(cfg, "rho_bar", cfg_path);
  m.unstable = required<bool>(cfg, "unstable", cfg_path);
  m.t_final = required<double>(cfg, "t_final", cfg_path);
  m.blowup_threshold = required<double>(cfg, "blowup_threshold", cfg_path);
  m.inner_cut = required<double>(cfg, "inner_cut", cfg_path);
  m.alpha_max = required<double>(cfg, "alpha_max", cfg_path);
  m.periodized = required<bool>(cfg, "periodized", cfg_path);
  m.config_format = required<std::string>(cfg, "config_format", cfg_path);
  m.config_text = required<std::string>(cfg, "config_text", cfg_path);

  for (const auto& row : read_csv(dir / "norms.csv", kNormsHeader)) {
    NormReport r;
    r.time = row[0];
    r.l_inf = row[1];
    r.l2 = row[2];
    r.lipschitz = row[3];
    r.wiener1 = row[4];
    r.hs_half = row[5];
    r.hs_one = row[6];
    r.hs_three_half = row[7];
    r.blowup_proxy = row[8];
    log.reports.push_back(r);
  }

  const fs::path snap_dir = dir / "snapshots";
  if (fs::is_directory(snap_dir)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(snap_dir)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > 6 && name.rfind("t_", 0) == 0 && entry.path().extension() == ".csv") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& p : files) {
      const std::string stem = p.stem().string().substr(2);
      const double t = parse_double(stem, p, 0);
      if (m.kind == RunKind::Graph) {
        FieldSnapshot s;
        s.time = t;
        for (const auto& row : read_csv(p, "x,f")) {
          s.x.push_back(row[0]);
          s.f.push_back(row[1]);
        }
        if (s.x.size() != m.n_points) throw SchemaError(p.string() + ": row count differs from n_points");
        log.snapshots.push_back(std::move(s));
      } else {
        CurveSnapshot s;
        s.time = t;
        for (const auto& row : read_csv(p, "alpha,z1,z2")) {
          s.alpha.push_back(row[0]);
          s.z1.push_back(row[1]);
          s.z2.push_back(row[2]);
        }
        if (s.alpha.size() != m.n_points) throw SchemaError(p.string() + ": row count differs from n_points");
        log.curve_snapshots.push_back(std::move(s));
      }
    }
    std::sort(log.snapshots.begin(), log.snapshots.end(),
              [](const auto& a, const auto& b) { return a.time < b.time; });
    std::sort(log.curve_snapshots.begin(), log.curve_snapshots.end(),
              [](const auto& a, const auto& b) { return a.time < b.time; });
  }

  if (m.kind == RunKind::Curve) {
    for (const auto& row : read_csv(dir / "turning.csv", "time,turning_indicator")) {
      log.turning.push_back({row[0], row[1]});
    }
  }

  const fs::path st_path = dir / "status.json";
  const json st = parse_json_file(st_path);
  log.status = run_status_from_string(required<std::string>(st, "status", st_path));
  log.message = required<std::string>(st, "message", st_path);
  log.final_time = required<double>(st, "final_time", st_path);
  try {
    log.turning_time = optional_from(st, "turning_time");
    log.blowup_time = optional_from(st, "blowup_time");
    log.initial_turning_indicator = optional_from(st, "initial_turning_indicator");
    log.initial_dalpha_v1 = optional_from(st, "initial_dalpha_v1");
  } catch (const json::exception& e) {
    throw SchemaError(st_path.string() + ": " + e.what());
  }
  return log;
}

}  // namespace muskat
