#include "muskat/diagnostics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "flux_kernels.hpp"
#include "json.hpp"
#include "muskat/errors.hpp"
#include "muskat/parallel.hpp"
#include "muskat/spectral.hpp"

namespace muskat {

using nlohmann::json;

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::MaxPrinciple: return "MaxPrinciple";
    case TheoremId::L2Balance: return "L2Balance";
    case TheoremId::SlopeDecay: return "SlopeDecay";
    case TheoremId::WienerDecay: return "WienerDecay";
    case TheoremId::H12Inequality: return "H12Inequality";
    case TheoremId::BlowupCriterion: return "BlowupCriterion";
    case TheoremId::Turning: return "Turning";
  }
  return "Unknown";
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "Holds";
    case VerdictStatus::Violated: return "Violated";
    case VerdictStatus::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

namespace {

TheoremVerdict not_applicable(TheoremId id, const std::string& why) {
  return {id, VerdictStatus::NotApplicable, 0.0, why};
}

bool stable_graph(const RunLog& log) {
  return log.meta.kind == RunKind::Graph && log.meta.rho_bar > 0.0 && !log.meta.unstable;
}

std::string fmt(double v) { return format_double(v); }

/// Largest rise of series[k] above min(series[0..k-1]).
double max_rise(const std::vector<double>& series) {
  double lo = std::numeric_limits<double>::infinity(), worst = 0.0;
  for (double v : series) {
    if (v > lo) worst = std::max(worst, v - lo);
    lo = std::min(lo, v);
  }
  return worst;
}

template <class F>
std::vector<double> column(const RunLog& log, F&& get) {
  std::vector<double> out;
  out.reserve(log.reports.size());
  for (const NormReport& r : log.reports) out.push_back(get(r));
  return out;
}

}  // namespace

TheoremVerdict verdict_max_principle(const RunLog& log) {
  constexpr auto id = TheoremId::MaxPrinciple;
  if (!stable_graph(log)) return not_applicable(id, "requires a stable-regime graph run");
  if (log.reports.empty()) return not_applicable(id, "no reports");
  const auto linf = column(log, [](const NormReport& r) { return r.l_inf; });
  const double tol = 1e-6 * linf.front();
  const double rise = max_rise(linf);
  const bool ok = rise <= tol;
  return {id, ok ? VerdictStatus::Holds : VerdictStatus::Violated, rise,
          "l_inf(0)=" + fmt(linf.front()) + " l_inf(end)=" + fmt(linf.back()) + " tolerance=" + fmt(tol)};
}

L2BalanceSeries l2_balance_series(const RunLog& log, const QuadratureSpec& quad) {
  L2BalanceSeries s;
  if (log.snapshots.empty()) return s;
  const PeriodicGrid grid(log.meta.n_points, log.meta.length);
  const detail::ShiftNodes nodes = detail::build_shift_nodes(grid, quad);
  const double pref = log.meta.rho_bar / std::numbers::pi;
  for (const FieldSnapshot& snap : log.snapshots) {
    const RealField f(grid, snap.f);
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) e += f[i] * f[i];
    e *= grid.spacing();
    const RealField g = detail::integrate_log_kernel(f, derivative(f, 1), nodes, quad.periodized);
    double d = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) d += g[i];
    d *= pref * grid.spacing();
    const double acc = s.times.empty()
                           ? 0.0
                           : s.accumulated.back() + 0.5 * (snap.time - s.times.back()) * (d + s.dissipation.back());
    s.times.push_back(snap.time);
    s.energy.push_back(e);
    s.dissipation.push_back(d);
    s.accumulated.push_back(acc);
    s.residual.push_back(e + acc - s.energy.front());
  }
  return s;
}

TheoremVerdict verdict_l2_balance(const RunLog& log, const QuadratureSpec& quad) {
  constexpr auto id = TheoremId::L2Balance;
  if (!stable_graph(log)) return not_applicable(id, "requires a stable-regime graph run");
  if (log.snapshots.empty()) return not_applicable(id, "no snapshots");
  const L2BalanceSeries s = l2_balance_series(log, quad);
  const double e0 = s.energy.front();
  double worst = 0.0, worst_abs = 0.0, min_diss = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    worst = std::max(worst, s.residual[k]);
    worst_abs = std::max(worst_abs, std::abs(s.residual[k]));
    min_diss = std::min(min_diss, s.dissipation[k]);
  }
  const double rel = e0 > 0.0 ? worst / e0 : worst;
  const double rel_abs = e0 > 0.0 ? worst_abs / e0 : worst_abs;
  const bool ok = rel <= 1e-3 && min_diss >= 0.0;
  return {id, ok ? VerdictStatus::Holds : VerdictStatus::Violated, rel,
          "max_residual_rel=" + fmt(rel) + " max_abs_residual_rel=" + fmt(rel_abs) +
              " min_dissipation=" + fmt(min_diss) + " snapshots=" + std::to_string(s.times.size())};
}

TheoremVerdict verdict_slope(const RunLog& log) {
  constexpr auto id = TheoremId::SlopeDecay;
  if (!stable_graph(log)) return not_applicable(id, "requires a stable-regime graph run");
  if (log.reports.empty()) return not_applicable(id, "no reports");
  const auto lip = column(log, [](const NormReport& r) { return r.lipschitz; });
  if (!(lip.front() < 1.0)) return not_applicable(id, "initial lipschitz " + fmt(lip.front()) + " >= 1");
  double worst = 0.0;
  for (double v : lip) worst = std::max(worst, v - lip.front());
  const bool ok = worst <= 1e-6;
  return {id, ok ? VerdictStatus::Holds : VerdictStatus::Violated, worst,
          "lipschitz(0)=" + fmt(lip.front()) + " lipschitz(end)=" + fmt(lip.back())};
}

TheoremVerdict verdict_wiener(const RunLog& log) {
  constexpr auto id = TheoremId::WienerDecay;
  if (!stable_graph(log)) return not_applicable(id, "requires a stable-regime graph run");
  if (log.reports.empty()) return not_applicable(id, "no reports");
  const auto w = column(log, [](const NormReport& r) { return r.wiener1; });
  if (!(w.front() < 1.0 / 3.0)) return not_applicable(id, "initial wiener1 " + fmt(w.front()) + " >= 1/3");
  const double rise = max_rise(w);
  const bool ok = rise <= 1e-6;
  return {id, ok ? VerdictStatus::Holds : VerdictStatus::Violated, rise,
          "wiener1(0)=" + fmt(w.front()) + " wiener1(end)=" + fmt(w.back()) +
              " below_classical_0.2=" + (w.front() < 0.2 ? "true" : "false")};
}

H12Series h12_series(const RunLog& log) {
  H12Series s;
  double k_run = 0.0, x_run = 0.0, integral = 0.0;
  double h1_0 = 0.0;
  for (std::size_t i = 0; i < log.reports.size(); ++i) {
    const NormReport& r = log.reports[i];
    if (i == 0) {
      h1_0 = r.hs_half * r.hs_half;
    } else {
      const NormReport& p = log.reports[i - 1];
      integral += 0.5 * (r.time - p.time) * (r.hs_one * r.hs_one + p.hs_one * p.hs_one);
    }
    k_run = std::max(k_run, r.lipschitz);
    x_run = std::max(x_run, r.hs_three_half);
    const double lhs = r.hs_half * r.hs_half + std::numbers::pi / (1.0 + k_run * k_run) * integral;
    const double rhs = h1_0 + (x_run + x_run * x_run) * integral;
    s.times.push_back(r.time);
    s.lhs.push_back(lhs);
    s.rhs.push_back(rhs);
    s.c_impl.push_back(rhs > 0.0 ? lhs / rhs : 0.0);
    s.k_running.push_back(k_run);
  }
  return s;
}

TheoremVerdict verdict_h12_inequality(const RunLog& log, double reference_constant) {
  constexpr auto id = TheoremId::H12Inequality;
  if (!stable_graph(log)) return not_applicable(id, "requires a stable-regime graph run");
  if (std::abs(log.meta.rho_bar - std::numbers::pi) > 1e-12) {
    return not_applicable(id, "stated for rho_bar = pi, run has " + fmt(log.meta.rho_bar));
  }
  if (log.reports.empty()) return not_applicable(id, "no reports");
  const H12Series s = h12_series(log);
  const double worst = *std::max_element(s.c_impl.begin(), s.c_impl.end());
  double h32 = 0.0;
  for (const NormReport& r : log.reports) h32 = std::max(h32, r.hs_three_half);
  const bool ok = std::isfinite(worst) && worst <= reference_constant;
  return {id, ok ? VerdictStatus::Holds : VerdictStatus::Violated, worst,
          "c_impl_final=" + fmt(s.c_impl.back()) + " K=" + fmt(s.k_running.back()) +
              " max_hs_three_half=" + fmt(h32) + " reference_constant=" + fmt(reference_constant)};
}

TheoremVerdict verdict_blowup(const RunLog& log) {
  constexpr auto id = TheoremId::BlowupCriterion;
  if (log.meta.kind != RunKind::Graph) return not_applicable(id, "requires a graph run");
  if (log.reports.empty()) return not_applicable(id, "no reports");
  const double thr = log.meta.blowup_threshold;
  double worst = 0.0;
  std::optional<double> first;
  for (const NormReport& r : log.reports) {
    worst = std::max(worst, r.blowup_proxy);
    if (!first && r.blowup_proxy > thr) first = r.time;
  }
  const double margin = worst / thr;
  std::string details = "max_blowup_proxy=" + fmt(worst) + " threshold=" + fmt(thr);
  if (first) details += " first_crossing_time=" + fmt(*first);
  return {id, first ? VerdictStatus::Violated : VerdictStatus::Holds, margin, details};
}

TheoremVerdict verdict_turning(const RunLog& log) {
  constexpr auto id = TheoremId::Turning;
  if (log.meta.kind != RunKind::Curve) return not_applicable(id, "requires a curve run");
  const bool predicted = log.initial_dalpha_v1 && *log.initial_dalpha_v1 < 0.0;
  const bool observed = log.turning_time.has_value();
  std::string details = std::string("predicted=") + (predicted ? "turning" : "no_turning") +
                        " observed=" + (observed ? "turning" : "no_turning");
  if (log.initial_dalpha_v1) details += " dalpha_v1=" + fmt(*log.initial_dalpha_v1);
  if (log.initial_turning_indicator) details += " initial_indicator=" + fmt(*log.initial_turning_indicator);
  if (log.turning_time) details += " turning_time=" + fmt(*log.turning_time);
  // Without turning the run must have reached its end for the absence to count.
  if (!observed && log.status != RunStatus::Completed && log.status != RunStatus::UnstableCapReached) {
    return {id, VerdictStatus::NotApplicable, 0.0, details + " run_halted=" + to_string(log.status)};
  }
  const bool ok = predicted == observed;
  return {id, ok ? VerdictStatus::Holds : VerdictStatus::Violated, ok ? 0.0 : 1.0, details};
}

std::vector<TheoremVerdict> verify_all(const RunLog& log) {
  return {verdict_max_principle(log), verdict_l2_balance(log), verdict_slope(log),        verdict_wiener(log),
          verdict_h12_inequality(log), verdict_blowup(log),    verdict_turning(log)};
}

std::string verdicts_to_json(const std::vector<TheoremVerdict>& verdicts) {
  json arr = json::array();
  for (const TheoremVerdict& v : verdicts) {
    arr.push_back({{"theorem_id", to_string(v.theorem_id)},
                   {"status", to_string(v.status)},
                   {"worst_margin", v.worst_margin},
                   {"details", v.details}});
  }
  return arr.dump(2);
}

std::string norm_report_to_json(const NormReport& r) {
  const json j = {{"time", r.time},       {"l_inf", r.l_inf},     {"l2", r.l2},
                  {"lipschitz", r.lipschitz}, {"wiener1", r.wiener1}, {"hs_half", r.hs_half},
                  {"hs_one", r.hs_one},   {"hs_three_half", r.hs_three_half}, {"blowup_proxy", r.blowup_proxy}};
  return j.dump(2);
}

double second_difference_identity_error(const RealField& f, const QuadratureSpec& quad) {
  const PeriodicGrid& grid = f.grid();
  quad.validate(grid);
  const std::size_t n = grid.n_points();
  const std::size_t mask = n - 1;
  const double h = grid.spacing();
  const double k = std::numbers::pi / grid.length();
  const detail::ShiftNodes nodes = detail::build_shift_nodes(grid, quad);
  const double shift = nodes.half_shifted ? 0.5 * h : 0.0;
  // f(x - a) and f(x + a) for a = offset * h + shift.
  const RealField minus = shift != 0.0 ? translate(f, shift) : f;
  const RealField plus = shift != 0.0 ? translate(f, -shift) : f;
  const RealField fxx = derivative(f, 2);
  const RealField lam = apply_lambda_s(f.without_mean(), 1.0);

  double err = 0.0, scale = 0.0;
  std::vector<double> terms(nodes.regular.size() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < nodes.regular.size(); ++m) {
      const detail::ShiftNode& nd = nodes.regular[m];
      const auto off = static_cast<std::size_t>(nd.offset);
      const double second = minus[(i - off) & mask] + plus[(i + off) & mask] - 2.0 * f[i];
      const double kernel = quad.periodized ? k * k / (nd.sin_t * nd.sin_t) : 1.0 / (nd.alpha * nd.alpha);
      terms[m] = nd.weight * kernel * second;
    }
    terms.back() = nodes.limit_weight * fxx[i];
    const double integral = pairwise_sum(terms);
    const double expected = -2.0 * std::numbers::pi * lam[i];
    err = std::max(err, std::abs(integral - expected));
    scale = std::max(scale, std::abs(expected));
  }
  return scale > 0.0 ? err / scale : err;
}

KernelIdentityReport kernel_identity_check(std::size_t n_samples, std::size_t n_points, std::uint64_t seed,
                                           const QuadratureSpec& quad) {
  const PeriodicGrid grid(n_points, 2.0 * std::numbers::pi);
  std::vector<RealField> fields;
  for (int mode : {1, 3, 7}) {
    fields.push_back(RealField::sample(grid, [mode](double x) { return std::cos(mode * x); }));
  }
  for (std::size_t s = 0; s < n_samples; ++s) {
    fields.push_back(random_band_limited(grid, 12, 1.0, seed + s));
  }

  KernelIdentityReport rep{0.0, 0.0};
  for (const RealField& f : fields) {
    rep.second_difference_error = std::max(rep.second_difference_error, second_difference_identity_error(f, quad));
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, grid.length());
  std::uniform_real_distribution<double> ua(1e-3, 0.5 * grid.length());
  for (const RealField& f : fields) {
    const TrigInterpolant p(f);
    const double scale = std::max(1.0, derivative(f, 1).max_abs());
    for (int trial = 0; trial < 16; ++trial) {
      const double x = ux(rng), a = ua(rng);
      const double direct = (p.value(x + a) - p.value(x - a)) / a;
      const double fx = p.derivative(x, 1);
      const double inner = boost::math::quadrature::gauss<double, 40>::integrate(
          [&](double s) { return p.derivative(x + s, 1) + p.derivative(x - s, 1) - 2.0 * fx; }, 0.0, a);
      const double rewritten = inner / a + 2.0 * fx;
      rep.diff_rewrite_error = std::max(rep.diff_rewrite_error, std::abs(direct - rewritten) / scale);
    }
  }
  return rep;
}

}  // namespace muskat
