#pragma once

namespace fracorder::specfun {

/// Parameters of the two-parameter Mittag-Leffler function
/// E_{rho,omega}(z) = sum_k z^k / Gamma(rho k + omega).
struct MLParams {
  double rho;
  double omega;
};

/// ln Gamma(x) for x > 0. Relative error below 1e-13 on (0, 170].
double ln_gamma(double x);

/// ln Gamma(1 + x) for x > -1, accurate in the relative sense near x = 0.
double ln_gamma1p(double x);

/// Gamma(x) for x > 0. Integer arguments return the factorial table entry.
double gamma(double x);

/// Psi(x) = Gamma'(x) / Gamma(x) for x > 0.
double digamma(double x);

/// E_{1,omega}(z).
///
/// Integer omega with z < -1 uses the finite closed form
///   z^{-m} (e^z - sum_{k<m} z^k / k!),   m = omega - 1,
/// summed with compensation. Other omega with z <= -35 use the asymptotic
/// expansion, where the series would cancel beyond double-double reach.
/// Everything else goes through the power series.
double mittag_leffler_one(double omega, double z);

/// Power series route for E_{1,omega}(z), accumulated in double-double.
/// Throws NonConvergenceError if the series does not settle within 1e5 terms.
double mittag_leffler_one_series(double omega, double z);

/// -sum_{k>=1} z^{-k} / Gamma(omega - k) for z < 0, truncated at its
/// smallest term. The neglected part is O(e^z |z|^{1-omega}).
double mittag_leffler_one_asymptotic(double omega, double z);

/// Closed-form route for E_{1,omega}(z); omega must be a positive integer.
double mittag_leffler_one_closed(int omega, double z);

/// Plain truncated series for general rho. rho == 1 defers to
/// mittag_leffler_one.
double mittag_leffler(const MLParams& params, double z);

}  // namespace fracorder::specfun
