#include "muskat/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "muskat/errors.hpp"
#include "muskat/run_log.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---- TOML subset: [table] headers, key = value, strings, numbers, booleans, flat arrays.

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_str = false;
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_str) {
      if (c == '\\' && quote == '"') {
        ++i;
      } else if (c == quote) {
        in_str = false;
      }
    } else if (c == '"' || c == '\'') {
      in_str = true;
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

json toml_scalar(const std::string& raw, const std::string& key, int lineno) {
  const std::string v = trim(raw);
  const auto fail = [&](const std::string& why) -> json {
    throw ConfigError(key, "line " + std::to_string(lineno) + ": " + why);
  };
  if (v.empty()) return fail("missing value");
  if (v.front() == '"' || v.front() == '\'') {
    if (v.size() < 2 || v.back() != v.front()) return fail("unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v.front() == '"' && v[i] == '\\' && i + 2 < v.size()) {
        const char e = v[++i];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += v[i];
      }
    }
    return out;
  }
  if (v == "true") return true;
  if (v == "false") return false;
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  std::string num;
  for (char c : v) {
    if (c != '_') num += c;
  }
  std::size_t used = 0;
  try {
    const bool integral = num.find_first_of(".eE") == std::string::npos;
    if (integral) {
      const long long i = std::stoll(num, &used);
      if (used == num.size()) return i;
    } else {
      const double d = std::stod(num, &used);
      if (used == num.size()) return d;
    }
  } catch (const std::exception&) {
  }
  return fail("cannot parse value '" + v + "'");
}

json toml_value(const std::string& raw, const std::string& key, int lineno) {
  const std::string v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError(key, "line " + std::to_string(lineno) + ": unterminated array");
    json arr = json::array();
    const std::string body = trim(v.substr(1, v.size() - 2));
    if (body.empty()) return arr;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;
      arr.push_back(toml_scalar(item, key, lineno));
    }
    return arr;
  }
  return toml_scalar(v, key, lineno);
}

json parse_toml(const std::string& text) {
  json root = json::object();
  json* table = &root;
  std::string table_name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("", "line " + std::to_string(lineno) + ": bad table header");
      table_name = trim(s.substr(1, s.size() - 2));
      if (table_name.empty() || table_name.find('.') != std::string::npos) {
        throw ConfigError(table_name, "line " + std::to_string(lineno) + ": unsupported table name");
      }
      if (root.contains(table_name)) throw ConfigError(table_name, "table defined twice");
      root[table_name] = json::object();
      table = &root[table_name];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(s.substr(0, eq));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
    const std::string full = table_name.empty() ? key : table_name + "." + key;
    if (key.empty()) throw ConfigError("", "line " + std::to_string(lineno) + ": empty key");
    if (table->contains(key)) throw ConfigError(full, "key defined twice");
    (*table)[key] = toml_value(s.substr(eq + 1), full, lineno);
  }
  return root;
}

// ---- strict field readers

class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(prefix_, "expected a table/object");
  }

  std::string name(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }
  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(name(key), "expected a number");
    return v.get<double>();
  }
  long long integer(const std::string& key) {
    const json& v = at(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    throw ConfigError(name(key), "expected an integer");
  }
  bool boolean(const std::string& key) {
    const json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(name(key), "expected true or false");
    return v.get<bool>();
  }
  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(name(key), "expected a string");
    return v.get<std::string>();
  }
  const json& raw(const std::string& key) { return at(key); }

  template <class E>
  E choice(const std::string& key, const std::map<std::string, E>& options) {
    const std::string v = string(key);
    const auto it = options.find(v);
    if (it == options.end()) {
      std::string allowed;
      for (const auto& [k, e] : options) allowed += (allowed.empty() ? "" : ", ") + k;
      throw ConfigError(name(key), "unknown value '" + v + "' (allowed: " + allowed + ")");
    }
    return it->second;
  }

  /// Strict mode: every key must have been consulted.
  void reject_unknown() const {
    for (const auto& [k, v] : obj_.items()) {
      if (!seen_.count(k)) throw ConfigError(name(k), "unknown key");
    }
  }

 private:
  const json& at(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) throw ConfigError(name(key), "missing");
    return obj_.at(key);
  }

  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

const std::map<std::string, Mode> kModes{{"graph", Mode::Graph},
                                         {"curve", Mode::Curve},
                                         {"norms", Mode::Norms},
                                         {"verify", Mode::Verify},
                                         {"convergence", Mode::Convergence}};

const std::map<std::string, InitialKind> kInitial{{"zero", InitialKind::Zero},
                                                  {"cosine", InitialKind::Cosine},
                                                  {"slope_profile", InitialKind::SlopeProfile},
                                                  {"turning_profile", InitialKind::TurningProfile},
                                                  {"from_csv", InitialKind::FromCsv},
                                                  {"random_band_limited", InitialKind::RandomBandLimited}};

InitialData read_initial(const json& j) {
  InitialData d;
  if (j.is_string()) {
    const auto it = kInitial.find(j.get<std::string>());
    if (it == kInitial.end()) throw ConfigError("initial_data", "unknown kind '" + j.get<std::string>() + "'");
    if (it->second != InitialKind::Zero) {
      throw ConfigError("initial_data", "kind '" + it->first + "' needs parameters; use a table");
    }
    return d;
  }
  Reader r(j, "initial_data");
  d.kind = r.choice("kind", kInitial);
  switch (d.kind) {
    case InitialKind::Zero:
      break;
    case InitialKind::Cosine:
      d.amplitude = r.number("amplitude");
      d.wavenumber = r.has("wavenumber") ? static_cast<int>(r.integer("wavenumber")) : 1;
      break;
    case InitialKind::SlopeProfile:
      d.slope = r.number("slope");
      break;
    case InitialKind::TurningProfile:
      d.steepness = r.number("steepness");
      d.amplitude = r.has("amplitude") ? r.number("amplitude") : 1.0;
      break;
    case InitialKind::FromCsv:
      d.path = r.string("path");
      break;
    case InitialKind::RandomBandLimited:
      d.amplitude = r.number("amplitude");
      d.max_mode = r.has("max_mode") ? static_cast<int>(r.integer("max_mode")) : 8;
      break;
  }
  r.reject_unknown();
  return d;
}

SimConfig from_json(const json& root) {
  SimConfig c;
  Reader r(root, "");
  c.mode = r.choice("mode", kModes);
  if (r.has("n_points")) {
    const long long n = r.integer("n_points");
    if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("n_points", "must be a power of two >= 8");
    c.n_points = static_cast<std::size_t>(n);
  }
  if (r.has("length")) c.length = r.number("length");
  if (r.has("rho_bar")) c.rho_bar = r.number("rho_bar");
  if (r.has("t_final")) c.t_final = r.number("t_final");
  if (r.has("cfl_factor")) c.cfl_factor = r.number("cfl_factor");
  if (r.has("scheme")) {
    c.scheme = r.choice("scheme", std::map<std::string, TimeScheme>{
                                      {"rk4_explicit", TimeScheme::Rk4Explicit},
                                      {"rk4_integrating_factor", TimeScheme::Rk4IntegratingFactor}});
  }
  if (r.has("flux_form")) {
    c.flux_form = r.choice("flux_form", std::map<std::string, FluxForm>{{"arctan", FluxForm::Arctan},
                                                                        {"rational", FluxForm::Rational}});
  }
  if (r.has("quad")) {
    Reader q(r.raw("quad"), "quad");
    if (q.has("inner_cut")) c.quad.inner_cut = q.number("inner_cut");
    if (q.has("alpha_max")) c.quad.alpha_max = q.number("alpha_max");
    if (q.has("rule")) {
      c.quad.rule = q.choice("rule", std::map<std::string, QuadratureRule>{
                                         {"midpoint_exclude_zero", QuadratureRule::MidpointExcludeZero},
                                         {"trapezoid_shifted", QuadratureRule::TrapezoidShifted}});
    }
    if (q.has("periodized")) c.quad.periodized = q.boolean("periodized");
    q.reject_unknown();
  }
  if (r.has("initial_data")) c.initial_data = read_initial(r.raw("initial_data"));

  const auto positive_interval = [&](const char* key, double& out) {
    if (!r.has(key)) return;
    out = r.number(key);
    if (!(out > 0.0)) throw ConfigError(key, "must be > 0");
  };
  positive_interval("report_interval", c.report_interval);
  positive_interval("snapshot_interval", c.snapshot_interval);

  if (r.has("blowup_threshold")) c.blowup_threshold = r.number("blowup_threshold");
  if (r.has("unstable")) c.unstable = r.boolean("unstable");
  if (r.has("output_dir")) c.output_dir = r.string("output_dir");
  if (r.has("seed")) {
    const long long s = r.integer("seed");
    if (s < 0) throw ConfigError("seed", "must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (r.has("chord_arc_floor")) c.chord_arc_floor = r.number("chord_arc_floor");
  if (r.has("critical_tol")) c.critical_tol = r.number("critical_tol");
  if (r.has("resolutions")) {
    const json& arr = r.raw("resolutions");
    if (!arr.is_array()) throw ConfigError("resolutions", "expected an array of integers");
    c.resolutions.clear();
    for (const json& v : arr) {
      if (!v.is_number_integer() || v.get<long long>() < 8) {
        throw ConfigError("resolutions", "entries must be integers >= 8");
      }
      c.resolutions.push_back(v.get<std::size_t>());
    }
  }
  if (r.has("convergence_method")) {
    c.convergence_method = r.choice("convergence_method", std::map<std::string, ConvergenceMethod>{
                                                              {"fast_rational", ConvergenceMethod::FastRational},
                                                              {"fast_arctan", ConvergenceMethod::FastArctan},
                                                              {"oracle", ConvergenceMethod::Oracle}});
  }
  r.reject_unknown();

  if (c.t_final > 0.0) {
    if (c.report_interval == 0.0) c.report_interval = c.t_final / 50.0;
    if (c.snapshot_interval == 0.0) c.snapshot_interval = c.t_final / 10.0;
  }
  return c;
}

}  // namespace

std::string to_string(Mode m) {
  for (const auto& [k, v] : kModes) {
    if (v == m) return k;
  }
  return "graph";
}

void validate(const SimConfig& c) {
  if (c.n_points < 8 || (c.n_points & (c.n_points - 1)) != 0) {
    throw ConfigError("n_points", "must be a power of two >= 8");
  }
  if (!(c.length > 0.0) || !std::isfinite(c.length)) throw ConfigError("length", "must be positive");
  if (!std::isfinite(c.rho_bar)) throw ConfigError("rho_bar", "must be finite");
  if (c.rho_bar <= 0.0 && !c.unstable) {
    throw ConfigError("rho_bar", "rho_bar <= 0 is the Rayleigh-Taylor unstable regime; set unstable = true");
  }
  if (!(c.cfl_factor > 0.0)) throw ConfigError("cfl_factor", "must be > 0");
  const bool evolves = c.mode == Mode::Graph || c.mode == Mode::Curve || c.mode == Mode::Verify;
  if (evolves) {
    if (!(c.t_final > 0.0) || !std::isfinite(c.t_final)) throw ConfigError("t_final", "must be > 0");
    if (!(c.report_interval > 0.0)) throw ConfigError("report_interval", "must be > 0");
    if (!(c.snapshot_interval > 0.0)) throw ConfigError("snapshot_interval", "must be > 0");
  }
  if (!(c.blowup_threshold > 0.0)) throw ConfigError("blowup_threshold", "must be > 0");
  if (!(c.chord_arc_floor >= 0.0)) throw ConfigError("chord_arc_floor", "must be >= 0");
  if (!(c.critical_tol > 0.0)) throw ConfigError("critical_tol", "must be > 0");
  try {
    c.quad.validate(PeriodicGrid(c.n_points, c.length));
  } catch (const InvalidArgument& e) {
    throw ConfigError("quad", e.what());
  }
  const InitialData& d = c.initial_data;
  if (d.kind == InitialKind::TurningProfile && c.mode != Mode::Curve) {
    throw ConfigError("initial_data.kind", "turning_profile is a curve; use mode = \"curve\"");
  }
  if (d.kind == InitialKind::Cosine && d.wavenumber < 1) {
    throw ConfigError("initial_data.wavenumber", "must be >= 1");
  }
  if (d.kind == InitialKind::Cosine && static_cast<std::size_t>(d.wavenumber) >= c.n_points / 2) {
    throw ConfigError("initial_data.wavenumber", "must be below the Nyquist mode");
  }
  if (d.kind == InitialKind::SlopeProfile && !(d.slope >= 0.0)) {
    throw ConfigError("initial_data.slope", "must be >= 0");
  }
  if (d.kind == InitialKind::TurningProfile && !(d.steepness >= 0.0 && d.steepness < 1.0)) {
    throw ConfigError("initial_data.steepness", "must lie in [0, 1) so that the curve starts as a graph");
  }
  if (d.kind == InitialKind::RandomBandLimited &&
      (d.max_mode < 1 || static_cast<std::size_t>(d.max_mode) >= c.n_points / 2)) {
    throw ConfigError("initial_data.max_mode", "must lie in [1, N/2)");
  }
  if (c.mode == Mode::Convergence) {
    if (c.resolutions.size() < 2) throw ConfigError("resolutions", "need at least two entries");
    for (std::size_t i = 0; i < c.resolutions.size(); ++i) {
      const std::size_t n = c.resolutions[i];
      if ((n & (n - 1)) != 0) throw ConfigError("resolutions", "entries must be powers of two");
      if (i > 0 && n <= c.resolutions[i - 1]) throw ConfigError("resolutions", "must be increasing");
    }
  }
}

SimConfig parse_config_text(const std::string& text, const std::string& format) {
  json root;
  if (format == "toml") {
    root = parse_toml(text);
  } else {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
  }
  SimConfig c = from_json(root);
  c.source_format = format == "toml" ? "toml" : "json";
  c.source_text = text;
  validate(c);
  return c;
}

SimConfig parse_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string format = path.extension() == ".toml" ? "toml" : "json";
  SimConfig c = parse_config_text(ss.str(), format);
  if (c.initial_data.kind == InitialKind::FromCsv) {
    const fs::path p(c.initial_data.path);
    if (p.is_relative()) c.initial_data.path = (path.parent_path() / p).lexically_normal().string();
  }
  return c;
}

RealField slope_profile(const PeriodicGrid& grid, double slope) {
  const double k = 2.0 * std::numbers::pi / grid.length();
  const RealField base = RealField::sample(grid, [k](double x) { return std::sin(k * x) * std::exp(std::cos(k * x)); });
  if (slope == 0.0) return RealField::zeros(grid);
  return (slope / sup_abs_interpolant(derivative(base, 1))) * base;
}

InterfaceCurve turning_profile(const PeriodicGrid& grid, double steepness, double amplitude, double rho_bar) {
  const double k = 2.0 * std::numbers::pi / grid.length();
  std::vector<double> z1(grid.n_points()), z2(grid.n_points());
  for (std::size_t j = 0; j < z1.size(); ++j) {
    const double a = grid.x(j);
    z1[j] = a - steepness * std::sin(k * a) / k;
    z2[j] = amplitude * std::sin(3.0 * k * a) / k;
  }
  return InterfaceCurve(grid, std::move(z1), std::move(z2), 0.0, rho_bar, rho_bar <= 0.0);
}

RealField make_initial_field(const SimConfig& cfg) {
  const PeriodicGrid grid(cfg.n_points, cfg.length);
  const InitialData& d = cfg.initial_data;
  switch (d.kind) {
    case InitialKind::Zero:
      return RealField::zeros(grid);
    case InitialKind::Cosine: {
      const double k = 2.0 * std::numbers::pi * d.wavenumber / cfg.length;
      return RealField::sample(grid, [&](double x) { return d.amplitude * std::cos(k * x); });
    }
    case InitialKind::SlopeProfile:
      return slope_profile(grid, d.slope);
    case InitialKind::RandomBandLimited:
      return random_band_limited(grid, static_cast<std::size_t>(d.max_mode), d.amplitude, cfg.seed);
    case InitialKind::FromCsv: {
      FieldSnapshot snap;
      try {
        snap = read_field_csv(d.path);
      } catch (const SchemaError& e) {
        throw ConfigError("initial_data.path", e.what());
      }
      const std::size_t n = snap.x.size();
      const double h = snap.x[1] - snap.x[0];
      const double len = h * static_cast<double>(n);
      if (std::abs(len - cfg.length) > 1e-9 * cfg.length) {
        throw ConfigError("initial_data.path", "CSV period " + std::to_string(len) +
                                                   " differs from length " + std::to_string(cfg.length));
      }
      if ((n & (n - 1)) != 0 || n < 8) {
        throw ConfigError("initial_data.path", "CSV row count must be a power of two >= 8");
      }
      const RealField f(PeriodicGrid(n, len), snap.f);
      return n == cfg.n_points ? f : resample(f, grid);
    }
    case InitialKind::TurningProfile:
      break;
  }
  throw ConfigError("initial_data.kind", "turning_profile has no graph representation");
}

InterfaceCurve make_initial_curve(const SimConfig& cfg) {
  const PeriodicGrid grid(cfg.n_points, cfg.length);
  if (cfg.initial_data.kind == InitialKind::TurningProfile) {
    InterfaceCurve c = turning_profile(grid, cfg.initial_data.steepness, cfg.initial_data.amplitude, cfg.rho_bar);
    c.unstable = cfg.unstable;
    return c;
  }
  return InterfaceCurve::from_graph(make_initial_field(cfg), 0.0, cfg.rho_bar, cfg.unstable);
}

}  // namespace muskat
