#include "fracorder/analysis.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <string>

#include "fracorder/errors.hpp"
#include "fracorder/specfun.hpp"
#include "numeric.hpp"

namespace fracorder {
namespace {

void require_m(int m) {
  if (m < 2) throw DomainError("m must be an integer >= 2, got " + std::to_string(m));
}

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1), got " + detail::format_shortest(beta));
  }
}

void require_limit_range(int m, double T) {
  if (!(T > 0.0 && T <= m - 1)) {
    throw DomainError("T must lie in (0, m - 1], got T = " + detail::format_shortest(T) +
                      " for m = " + std::to_string(m));
  }
}

// ln Gamma(m + beta) - ln Gamma(m) without cancellation.
double ln_gamma_shift(int m, double beta) {
  double sum = specfun::ln_gamma1p(beta);
  for (int k = 1; k < m; ++k) sum += std::log1p(beta / k);
  return sum;
}

}  // namespace

OrderFit fit_order(std::span<const ErrorReport> reports) {
  if (reports.size() < 4) throw DomainError("fit_order: at least 4 reports are required");
  auto const& first = reports.front();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto const& r = reports[i];
    if (r.kind != first.kind || r.p != first.p || !(r.interval == first.interval)) {
      throw DomainError("fit_order: reports must share operator, norm and interval");
    }
    if (i > 0 && !(r.beta < reports[i - 1].beta)) {
      throw DomainError("fit_order: betas must be strictly decreasing");
    }
    if (!(r.value > 0.0) || !std::isfinite(r.value)) {
      throw DegenerateFitError("fit_order: error value at beta = " +
                               detail::format_shortest(r.beta) +
                               " is not a positive finite number");
    }
  }

  double const n = static_cast<double>(reports.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (auto const& r : reports) {
    mean_x += std::log(r.beta);
    mean_y += std::log(r.value);
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (auto const& r : reports) {
    double const dx = std::log(r.beta) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(r.value) - mean_y);
  }
  double const slope = sxy / sxx;
  double const intercept = mean_y - slope * mean_x;
  double residual = 0.0;
  for (auto const& r : reports) {
    residual = std::max(residual,
                        std::abs(std::log(r.value) - (intercept + slope * std::log(r.beta))));
  }
  OrderFit const fit{slope, intercept, residual, reports.size()};
  if (residual > 0.5) {
    throw DegenerateFitError("fit_order: max log-residual " + detail::format_shortest(residual) +
                             " exceeds 0.5; the errors are not a power law in beta");
  }
  if (slope < 0.1) {
    throw DegenerateFitError("fit_order: fitted slope " + detail::format_shortest(slope) +
                             " is below 0.1; the errors do not decay with beta");
  }
  return fit;
}

double cf_error_l1_power(int m, double T, double beta) {
  require_m(m);
  require_beta(beta);
  double const rate = (1.0 - beta) / beta;
  double const ml = specfun::mittag_leffler_one(m + 1, -rate * T);
  return std::pow(T, m) / (1.0 - beta) * (specfun::gamma(m + 1) * ml - beta);
}

double c_error_l1_power(int m, double T, double beta) {
  require_m(m);
  require_beta(beta);
  // Gamma(m+beta+1) - Gamma(m+1) T^beta
  //   = Gamma(m+1) T^beta expm1(ln Gamma(m+1+beta) - ln Gamma(m+1) - beta ln T)
  double const log_ratio = ln_gamma_shift(m + 1, beta) - beta * std::log(T);
  double const difference =
      specfun::gamma(m + 1) * std::pow(T, beta) * std::expm1(log_ratio);
  return std::pow(T, m) * difference / specfun::gamma(m + 1 + beta);
}

RatioResult ratio_cf_over_c_l1(int m, double T, double beta) {
  require_m(m);
  require_limit_range(m, T);
  require_beta(beta);
  return {m, T, beta, cf_error_l1_power(m, T, beta) / c_error_l1_power(m, T, beta)};
}

RatioResult ratio_limit(int m, double T) {
  require_m(m);
  require_limit_range(m, T);
  double const value = ((m - T) / T) / (specfun::digamma(m + 1.0) - std::log(T));
  return {m, T, std::nullopt, value};
}

double t_star(int m, double beta) {
  require_m(m);
  require_beta(beta);
  double const rate = (1.0 - beta) / beta;
  double const scale = specfun::gamma(m);
  auto const F = [&](double v) { return scale * specfun::mittag_leffler_one(m, -rate * v) - beta; };

  double lo = m - 1;
  double f_lo = F(lo);
  if (!(f_lo > 0.0)) {
    throw BracketingError("t_star: no positive value at the lower bracket v = m - 1");
  }
  std::optional<std::pair<double, double>> bracket;
  int sign_changes = 0;
  for (double v = lo, fv = f_lo; v < 1e6;) {
    double const next = 2.0 * v;
    double const f_next = F(next);
    if ((fv > 0.0) != (f_next > 0.0)) {
      ++sign_changes;
      if (!bracket) bracket = std::pair{v, next};
    }
    v = next;
    fv = f_next;
  }
  if (!bracket) {
    throw BracketingError("t_star: no sign change found for v <= 1e6 (m = " + std::to_string(m) +
                          ", beta = " + detail::format_shortest(beta) + ")");
  }
  if (sign_changes > 1) {
    throw BracketingError("t_star: " + std::to_string(sign_changes) +
                          " sign changes found; the root is not unique");
  }
  auto [a, b] = *bracket;
  while (true) {
    double const mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (F(mid) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return std::abs(F(a)) <= std::abs(F(b)) ? a : b;
}

double s_star(int m, double beta) {
  require_m(m);
  require_beta(beta);
  return std::exp(ln_gamma_shift(m, beta) / beta);
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (int m = 3; m <= 6; ++m) {
    rows.push_back({m, ratio_limit(m, 1.0).value, ratio_limit(m, m - 1.0).value});
  }
  return rows;
}

std::vector<double> geometric_betas(double start, double end, int per_decade) {
  if (!(start > 0.0 && end > 0.0 && end < start)) {
    throw DomainError("geometric grid needs start > end > 0");
  }
  if (per_decade < 1) throw DomainError("geometric grid needs per_decade >= 1");
  double const decades = std::log10(start / end);
  auto const steps = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9));
  std::vector<double> betas(steps + 1);
  double const log_start = std::log10(start);
  double const log_step = decades / static_cast<double>(steps);
  for (std::size_t i = 0; i <= steps; ++i) {
    betas[i] = std::pow(10.0, log_start - log_step * static_cast<double>(i));
  }
  betas.front() = start;
  betas.back() = end;
  return betas;
}

}  // namespace fracorder
