// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments select criteria by name.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "muskat/config.hpp"
#include "muskat/curve.hpp"
#include "muskat/diagnostics.hpp"
#include "muskat/norms.hpp"
#include "muskat/oracle.hpp"
#include "muskat/parallel.hpp"
#include "muskat/runner.hpp"
#include "muskat/spectral.hpp"
#include "test_support.hpp"

using namespace muskat;
using muskat::testing::kTwoPi;
using muskat::testing::TempDir;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string summary;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Runs shared between criteria are computed once.

SimConfig graph_config(std::size_t n, double t_final, double interval) {
  SimConfig c;
  c.n_points = n;
  c.t_final = t_final;
  c.report_interval = interval;
  c.snapshot_interval = interval;
  return c;
}

SimConfig linear_config(std::size_t n, double t_final) {
  SimConfig c = graph_config(n, t_final, 0.01);
  c.initial_data.kind = InitialKind::Cosine;
  c.initial_data.amplitude = 1e-4;
  return c;
}

SimConfig slope_config(std::size_t n, double t_final, double slope) {
  SimConfig c = graph_config(n, t_final, 0.01);
  c.initial_data.kind = InitialKind::SlopeProfile;
  c.initial_data.slope = slope;
  return c;
}

const RunLog& linear_run() {
  static const RunLog log = run_graph(linear_config(256, 1.0));
  return log;
}

const RunLog& slope09_long_run() {
  static const RunLog log = run_graph(slope_config(512, 2.0, 0.9));
  return log;
}

double amplitude_k1(const std::vector<double>& samples, const PeriodicGrid& grid) {
  return 2.0 * std::abs(forward_transform(RealField(grid, samples)).coefficient(1));
}

Outcome linear_rate() {
  const RunLog& log = linear_run();
  const PeriodicGrid grid(log.meta.n_points, log.meta.length);
  // Least-squares slope of log |c_1| against time.
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(log.snapshots.size());
  for (const FieldSnapshot& s : log.snapshots) {
    const double y = std::log(amplitude_k1(s.f, grid));
    st += s.time;
    sy += y;
    stt += s.time * s.time;
    sty += s.time * y;
  }
  const double rate = -(n * sty - st * sy) / (n * stt - st * st);
  const double a0 = amplitude_k1(log.snapshots.front().f, grid);
  const double a1 = amplitude_k1(log.snapshots.back().f, grid);
  const double t = log.snapshots.back().time;
  const double amp_err = std::abs(a1 / a0 / std::exp(-kPi * t) - 1.0);
  const double rate_err = std::abs(rate / kPi - 1.0);
  return {log.status == RunStatus::Completed && rate_err <= 0.01 && amp_err <= 0.01,
          "fitted rate " + num(rate) + " (rel err " + num(rate_err) + "), A(T)/A(0) vs exp(-pi T) rel err " +
              num(amp_err)};
}

Outcome formulation_equivalence() {
  const PeriodicGrid grid(512, kTwoPi);
  double worst = 0.0;
  // Slopes 0.1 to 2.55. Steeper band-16 fields leave flux content near the Nyquist mode at N = 512.
  for (int i = 0; i < 50; ++i) {
    const RealField raw = random_band_limited(grid, 16, 1.0, 500 + i);
    const double slope = 0.1 + 0.05 * i;
    const GraphState s((slope / norm_report(raw, 0).lipschitz) * raw, 0.0, kPi);
    const RealField a = flux_arctan(s, {});
    const RealField r = flux_rational(s, {});
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - r[j]));
  }
  double identity = 0.0;
  for (double a : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    identity = std::max({identity, delta_cos_identity_error(a), delta_sin2_identity_error(a)});
  }
  return {worst <= 1e-8 && identity <= 1e-8,
          "max |arctan - rational| " + num(worst) + " over 50 fields; delta identity error " + num(identity)};
}

Outcome oracle_equivalence() {
  bool ok = true;
  std::string details;
  for (std::size_t n : {128u, 256u, 512u}) {
    const GraphState s(slope_profile(PeriodicGrid(n, kTwoPi), 0.9), 0.0, kPi);
    const OracleFlux o = pv_flux_direct(s);
    const RealField f = flux_rational(s, {});
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(o.flux[j] - f[j]));
    const double env = oracle_envelope(s);
    ok = ok && err <= env;
    details += "N=" + std::to_string(n) + " err " + num(err) + " env " + num(env) + "; ";
  }
  const RealField fine = slope_profile(PeriodicGrid(512, kTwoPi), 0.9);
  const ConvergenceReport oracle = convergence_study(fine, {32, 64, 128, 256, 512}, kPi, ConvergenceMethod::Oracle);
  const ConvergenceReport fast = convergence_study(fine, {32, 64, 128, 256, 512});
  ok = ok && oracle.rate >= 2.0 && fast.rate >= 2.0;
  details += "rate oracle " + num(oracle.rate) + ", fast " + num(fast.rate);
  return {ok, details};
}

Outcome max_principle() {
  const RunLog& log = slope09_long_run();
  const TheoremVerdict v = verdict_max_principle(log);
  RunLog corrupted = log;
  const std::size_t k = corrupted.reports.size() / 2;
  corrupted.reports[k].l_inf = corrupted.reports[k - 1].l_inf + 1e-3 * corrupted.reports.front().l_inf;
  const TheoremVerdict c = verdict_max_principle(corrupted);
  return {log.status == RunStatus::Completed && v.status == VerdictStatus::Holds &&
              c.status == VerdictStatus::Violated,
          "slope 0.9, N=512, T=2: " + to_string(v.status) + " (max rise " + num(v.worst_margin) +
              "); corrupted log: " + to_string(c.status)};
}

Outcome energy_balance() {
  const L2BalanceSeries lin = l2_balance_series(linear_run());
  double lin_res = 0.0;
  for (double r : lin.residual) lin_res = std::max(lin_res, std::abs(r));
  lin_res /= lin.energy.front();

  const L2BalanceSeries non = l2_balance_series(slope09_long_run());
  double excess = -1e300, min_diss = 1e300;
  for (std::size_t i = 0; i < non.times.size(); ++i) {
    excess = std::max(excess, non.residual[i] / non.energy.front());
    min_diss = std::min(min_diss, non.dissipation[i]);
  }
  const TheoremVerdict v = verdict_l2_balance(slope09_long_run());
  return {lin_res <= 1e-3 && excess <= 1e-3 && min_diss >= 0.0 && v.status == VerdictStatus::Holds,
          "linear |residual|/E0 " + num(lin_res) + "; slope 0.9 max (E + int D - E0)/E0 " + num(excess) +
              ", min dissipation " + num(min_diss)};
}

Outcome slope_and_wiener() {
  const TheoremVerdict slope = verdict_slope(slope09_long_run());

  // Random field rescaled to wiener1 = 0.3, handed to the runner through a CSV file.
  TempDir dir("wiener");
  const PeriodicGrid grid(256, kTwoPi);
  RealField w = random_band_limited(grid, 8, 1.0, 31);
  w = (0.3 / norm_wiener(w, 1.0)) * w;
  FieldSnapshot snap;
  for (std::size_t j = 0; j < grid.n_points(); ++j) {
    snap.x.push_back(grid.x(j));
    snap.f.push_back(w[j]);
  }
  write_field_csv(snap, dir.path() / "w.csv");
  SimConfig wc = graph_config(256, 1.0, 0.01);
  wc.initial_data.kind = InitialKind::FromCsv;
  wc.initial_data.path = (dir.path() / "w.csv").string();
  const RunLog wlog = run_graph(wc);
  const TheoremVerdict wiener = verdict_wiener(wlog);

  const TheoremVerdict slope_na = verdict_slope(run_graph(slope_config(256, 0.1, 1.2)));
  SimConfig big = graph_config(256, 0.1, 0.01);
  big.initial_data.kind = InitialKind::Cosine;
  big.initial_data.amplitude = 0.5;
  const TheoremVerdict wiener_na = verdict_wiener(run_graph(big));

  return {slope.status == VerdictStatus::Holds && wiener.status == VerdictStatus::Holds &&
              slope_na.status == VerdictStatus::NotApplicable && wiener_na.status == VerdictStatus::NotApplicable,
          "slope 0.9: " + to_string(slope.status) + ", wiener1 " + num(wlog.reports.front().wiener1) + ": " +
              to_string(wiener.status) + ", slope 1.2: " + to_string(slope_na.status) + ", wiener1 0.5: " +
              to_string(wiener_na.status)};
}

struct H12Summary {
  double max_c;
  double final_c;
};

H12Summary h12_of(const RunLog& log) {
  const H12Series s = h12_series(log);
  return {*std::max_element(s.c_impl.begin(), s.c_impl.end()), s.c_impl.back()};
}

bool within(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

Outcome h12_inequality() {
  struct Member {
    const char* name;
    std::function<SimConfig(std::size_t)> config;
  };
  const std::vector<Member> corpus{
      {"linear", [](std::size_t n) { return linear_config(n, 1.0); }},
      {"slope 0.3", [](std::size_t n) { return slope_config(n, 1.0, 0.3); }},
      {"slope 0.9", [](std::size_t n) { return slope_config(n, 1.0, 0.9); }},
  };
  bool ok = true;
  std::string details;
  for (const Member& m : corpus) {
    const RunLog base = run_graph(m.config(512));
    const H12Summary b = h12_of(base);
    const H12Summary d = h12_of(run_graph(m.config(1024)));

    // f_l(x, t) = f(l x, l t) / l with l = 2: half the period, half the time.
    TempDir dir("scaling");
    const PeriodicGrid grid(512, kTwoPi);
    const RealField f0 = make_initial_field(m.config(512));
    FieldSnapshot snap;
    for (std::size_t j = 0; j < 512; ++j) {
      snap.x.push_back(0.5 * grid.x(j));
      snap.f.push_back(0.5 * f0[j]);
    }
    write_field_csv(snap, dir.path() / "f.csv");
    SimConfig sc = graph_config(512, 0.5, 0.005);
    sc.length = kPi;
    sc.initial_data.kind = InitialKind::FromCsv;
    sc.initial_data.path = (dir.path() / "f.csv").string();
    const H12Summary s = h12_of(run_graph(sc));

    const bool finite = std::isfinite(b.max_c) && b.max_c <= kH12ReferenceConstant;
    const bool stable = within(d.max_c, b.max_c, 0.2) && within(d.final_c, b.final_c, 0.2) &&
                        within(s.max_c, b.max_c, 0.2) && within(s.final_c, b.final_c, 0.2);
    bool member_ok = finite && stable && verdict_h12_inequality(base).status == VerdictStatus::Holds;
    if (std::string(m.name) == "linear") member_ok = member_ok && within(b.max_c, 1.0, 0.05);
    ok = ok && member_ok;
    details += std::string(m.name) + ": C_impl max " + num(b.max_c) + " final " + num(b.final_c) + " (2N " +
               num(d.max_c) + "/" + num(d.final_c) + ", scaled " + num(s.max_c) + "/" + num(s.final_c) + "); ";
  }
  return {ok, details};
}

Outcome kernel_identities() {
  const KernelIdentityReport r = kernel_identity_check(20, 1024);
  return {r.second_difference_error <= 1e-4 && r.diff_rewrite_error <= 1e-10,
          "second-difference rel err " + num(r.second_difference_error) + ", difference rewrite rel err " +
              num(r.diff_rewrite_error)};
}

Outcome turning() {
  const auto curve_config = [](std::optional<double> steepness) {
    SimConfig c;
    c.mode = Mode::Curve;
    c.n_points = 256;
    c.t_final = 0.3;
    c.report_interval = 0.002;
    c.snapshot_interval = 0.05;
    if (steepness) {
      c.initial_data.kind = InitialKind::TurningProfile;
      c.initial_data.steepness = *steepness;
      c.initial_data.amplitude = 1.0;
    } else {
      c.initial_data.kind = InitialKind::SlopeProfile;
      c.initial_data.slope = 0.9;
    }
    return c;
  };
  bool ok = true;
  int turned = 0;
  std::string details;
  for (double s : {0.5, 0.8, 0.9, 0.92, 0.93}) {
    const RunLog log = run_curve(curve_config(s));
    const TheoremVerdict v = verdict_turning(log);
    const bool predicted = log.initial_dalpha_v1 && *log.initial_dalpha_v1 < 0.0;
    if (predicted && log.turning_time) ++turned;
    ok = ok && v.status == VerdictStatus::Holds;
    details += "s=" + num(s) + (log.initial_dalpha_v1 ? " dv1 " + num(*log.initial_dalpha_v1) : " no critical point") +
               (log.turning_time ? " turns at " + num(*log.turning_time) : " no turning") + "; ";
  }
  const RunLog control = run_curve(curve_config(std::nullopt));
  double min_indicator = 1e300;
  for (const TurningSample& t : control.turning) min_indicator = std::min(min_indicator, t.indicator);
  ok = ok && turned > 0 && !control.turning_time && min_indicator > 0.0 && control.status == RunStatus::Completed;
  details += "graph control min indicator " + num(min_indicator);
  return {ok, details};
}

Outcome norm_toolkit() {
  const PeriodicGrid grid(256, kTwoPi);
  double band = 1.0;
  double interp = 0.0;
  double invariance = 0.0;
  for (int i = 0; i < 100; ++i) {
    const RealField f = random_band_limited(grid, 16, 1.0, 1000 + i);
    for (double s : {0.5, 1.0, 1.5}) {
      const double r = besov_seminorm(f, BesovIndex(s, 2, 2), BesovOptions{}) / norm_homog_sobolev(f, s);
      band = std::max({band, r, 1.0 / r});
    }
    interp = std::max(interp, check_interpolation(f, 0.5, 1.5, 0.5, 2, 2));
    if (i < 10) {
      const RealField g = translate(f, 0.123456);
      const RealField h = 2.5 * f;
      const std::vector<std::function<double(const RealField&)>> norms{
          [](const RealField& u) { return norm_report(u, 0).l_inf; },
          [](const RealField& u) { return norm_report(u, 0).l2; },
          [](const RealField& u) { return norm_report(u, 0).lipschitz; },
          [](const RealField& u) { return norm_homog_sobolev(u, 0.5); },
          [](const RealField& u) { return norm_homog_sobolev(u, 1.0); },
          [](const RealField& u) { return norm_homog_sobolev(u, 1.5); },
          [](const RealField& u) { return norm_wiener(u, 1.0); },
          [](const RealField& u) { return besov_seminorm(u, BesovIndex(0.5, 2, 2), 128); },
          [](const RealField& u) { return besov_seminorm(u, BesovIndex(1.0, kInf, kInf), 128); },
          [](const RealField& u) { return besov_seminorm(u, BesovIndex(1.5, 2, 1), 128); },
      };
      for (const auto& norm : norms) {
        const double base = norm(f);
        invariance = std::max({invariance, std::abs(norm(g) - base) / base, std::abs(norm(h) - 2.5 * base) / base});
      }
    }
  }

  // Corpus maxima recorded when the corpus was fixed (phi seeds 5000+, f seeds 9000+).
  const std::map<std::pair<int, int>, double> commutator_constants{
      {{0, 0}, 0.7}, {{1, 0}, 0.4}, {{0, 1}, 0.6}, {{1, 1}, 0.2}, {{2, 0}, 0.3}, {{0, 2}, 0.5}};
  constexpr double kInterpolationConstant = 4.0;
  bool commutator_ok = true;
  std::string comm;
  for (const auto& [kl, bound] : commutator_constants) {
    double m = 0.0;
    for (int i = 0; i < 100; ++i) {
      const RealField phi = random_band_limited(grid, 8, 1.0, 5000 + i);
      const RealField f = random_band_limited(grid, 16, 1.0, 9000 + i);
      m = std::max(m, commutator_ratio(phi, f, kl.first, kl.second, 2.0));
    }
    commutator_ok = commutator_ok && m <= bound;
    comm += "(" + std::to_string(kl.first) + "," + std::to_string(kl.second) + ") " + num(m) + "/" + num(bound) + " ";
  }
  return {band <= 2.0 && interp <= kInterpolationConstant && commutator_ok && invariance <= 1e-10,
          "Besov/H^s band " + num(band) + ", interpolation max " + num(interp) + "/" + num(kInterpolationConstant) +
              ", commutator " + comm + ", invariance err " + num(invariance)};
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"linear_rate", linear_rate},
      {"formulation_equivalence", formulation_equivalence},
      {"oracle_equivalence", oracle_equivalence},
      {"max_principle", max_principle},
      {"energy_balance", energy_balance},
      {"slope_and_wiener_decay", slope_and_wiener},
      {"h12_inequality", h12_inequality},
      {"kernel_identities", kernel_identities},
      {"turning", turning},
      {"norm_toolkit", norm_toolkit},
  };
  const std::vector<std::string> only(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.summary.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
