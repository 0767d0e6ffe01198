#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracorder/norms.hpp"

namespace fracorder {

/// Least-squares line ln E = log_c_hat + r_hat ln beta.
struct OrderFit {
  double r_hat;
  double log_c_hat;
  double residual;  // max absolute log-residual
  std::size_t n_points;
};

/// Fits the empirical order of convergence of a beta sweep. Reports must
/// share kind, norm and interval, have strictly decreasing betas and
/// positive values; at least four are required. Throws DegenerateFitError
/// when the data are not a decaying power law (residual > 0.5 or slope
/// below 0.1).
OrderFit fit_order(std::span<const ErrorReport> reports);

struct RatioResult {
  int m;
  double T;
  std::optional<double> beta;
  double value;
};

/// ||CF error||_1 / ||C error||_1 for f(t) = t^m on (0, T), from the exact
/// closed forms of both errors. Requires 0 < T <= m - 1.
RatioResult ratio_cf_over_c_l1(int m, double T, double beta);

/// Exact CF-over-C error numerator
///   (T^m / (1 - beta)) (Gamma(m+1) E_{1,m+1}(-((1-beta)/beta) T) - beta).
double cf_error_l1_power(int m, double T, double beta);

/// Exact C error denominator
///   (T^m / Gamma(m+beta+1)) (Gamma(m+beta+1) - Gamma(m+1) T^beta).
double c_error_l1_power(int m, double T, double beta);

/// beta -> 0 limit ((m - T) / T) / (psi(m + 1) - ln T), 0 < T <= m - 1.
RatioResult ratio_limit(int m, double T);

/// Root v >= m - 1 of Gamma(m) E_{1,m}(-((1-beta)/beta) v) = beta.
/// Throws BracketingError if no unique sign change is found up to 1e6.
double t_star(int m, double beta);

/// Root w of w^beta Gamma(m) / Gamma(m + beta) = 1.
double s_star(int m, double beta);

struct Table1Row {
  int m;
  double ratio_t1;   // T = 1
  double ratio_tm1;  // T = m - 1
};

/// Limit ratios for m = 3, 4, 5, 6.
std::vector<Table1Row> table1();

/// Log-uniform grid from start down to end (inclusive) with the given number
/// of points per decade, rounded up so the spacing never exceeds it.
std::vector<double> geometric_betas(double start, double end, int per_decade);

}  // namespace fracorder
