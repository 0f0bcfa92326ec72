#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "muskat/graph.hpp"
#include "muskat/run_log.hpp"

namespace muskat {

enum class TheoremId { MaxPrinciple, L2Balance, SlopeDecay, WienerDecay, H12Inequality, BlowupCriterion, Turning };
enum class VerdictStatus { Holds, Violated, NotApplicable };

std::string to_string(TheoremId id);
std::string to_string(VerdictStatus s);

struct TheoremVerdict {
  TheoremId theorem_id;
  VerdictStatus status;
  double worst_margin;
  std::string details;
};

/// l_inf never rises above its running minimum by more than 1e-6 * l_inf(0).
/// worst_margin is the largest such rise.
TheoremVerdict verdict_max_principle(const RunLog& log);

/// Energy, accumulated dissipation and residual at each snapshot.
struct L2BalanceSeries {
  std::vector<double> times;
  std::vector<double> energy;        ///< ||f||^2_{L2}
  std::vector<double> dissipation;   ///< rho_bar/pi * int int log(1 + (Delta_alpha f)^2) dalpha dx
  std::vector<double> accumulated;   ///< trapezoid in time of `dissipation`
  std::vector<double> residual;      ///< energy + accumulated - energy(0)
};

L2BalanceSeries l2_balance_series(const RunLog& log, const QuadratureSpec& quad = {});

/// Holds when residual <= 1e-3 * ||f0||^2 at every snapshot and every snapshot dissipation is
/// nonnegative. worst_margin = max residual / ||f0||^2; details also carry max |residual|.
TheoremVerdict verdict_l2_balance(const RunLog& log, const QuadratureSpec& quad = {});

/// Applicable when lipschitz(0) < 1; Holds when lipschitz <= lipschitz(0) + 1e-6 throughout.
TheoremVerdict verdict_slope(const RunLog& log);

/// Applicable when wiener1(0) < 1/3; Holds when wiener1 is nonincreasing up to 1e-6.
TheoremVerdict verdict_wiener(const RunLog& log);

/// Both sides of the h1/2 energy inequality at every report instant T, with the implied
/// constant C_impl(T) = LHS / RHS.
struct H12Series {
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> c_impl;
  std::vector<double> k_running;   ///< running max of lipschitz
};

H12Series h12_series(const RunLog& log);

inline constexpr double kH12ReferenceConstant = 10.0;

/// Applicable to stable graph runs with rho_bar = pi. worst_margin = max_T C_impl(T).
TheoremVerdict verdict_h12_inequality(const RunLog& log, double reference_constant = kH12ReferenceConstant);

/// Holds while blowup_proxy stays below the run's threshold; worst_margin = max proxy / threshold.
TheoremVerdict verdict_blowup(const RunLog& log);

/// Curve runs: the sign of d(v1)/d(alpha) at the initial critical point (negative = turning
/// predicted; no critical point = no turning) must match whether turning was observed.
TheoremVerdict verdict_turning(const RunLog& log);

/// Every verdict applicable to the log's kind, in TheoremId order.
std::vector<TheoremVerdict> verify_all(const RunLog& log);

/// JSON array of {theorem_id, status, worst_margin, details}.
std::string verdicts_to_json(const std::vector<TheoremVerdict>& verdicts);
std::string norm_report_to_json(const NormReport& r);

struct KernelIdentityReport {
  /// max relative error of int (f(x-a) + f(x+a) - 2 f(x)) / a^2 da against -2 pi Lambda f.
  double second_difference_error;
  /// max relative discrepancy between the two expressions of D = (f(x+a) - f(x-a)) / a.
  double diff_rewrite_error;
};

/// Runs both identities on `n_samples` random band-limited fields (plus single modes).
KernelIdentityReport kernel_identity_check(std::size_t n_samples, std::size_t n_points = 1024,
                                           std::uint64_t seed = 1, const QuadratureSpec& quad = {});

/// Second-difference identity on one field: max|I - (-2 pi Lambda f)| / max|2 pi Lambda f|.
double second_difference_identity_error(const RealField& f, const QuadratureSpec& quad = {});

}  // namespace muskat
