#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fracorder/fractional_order.hpp"
#include "fracorder/funcat.hpp"
#include "fracorder/operators.hpp"

namespace fracorder {

enum class NormKind { L1, LInf };

std::string_view to_string(NormKind p) noexcept;  // "1" or "inf"
NormKind parse_norm_kind(std::string_view text);

/// One evaluation of E_{f,p}(beta) = || D^{1-beta} f - f' ||_p over an interval.
struct ErrorReport {
  OperatorKind kind;
  double beta;
  NormKind p;
  Interval interval;
  double value;
  std::size_t n_eval_points;
};

struct ErrorOptions {
  double tol = 1e-8;                     // absolute, L1 only
  std::size_t n_grid = 20001;            // L-infinity grid
  std::size_t max_evaluations = 1'000'000;
  QuadratureScheme scheme{};             // used when no closed form exists
};

/// L1 error by globally adaptive Gauss-Kronrod, split at the kinks of f.
/// Throws BudgetExceededError past options.max_evaluations.
ErrorReport error_l1(const TestFunction& f, OperatorKind kind, double beta, const Interval& interval,
                     const ErrorOptions& options = {});

/// Essential supremum of the error over (a, b]: dense grid, golden-section
/// refinement around the grid maximum, plus the limits at t -> a+ and at
/// both sides of every kink.
ErrorReport error_linf(const TestFunction& f, OperatorKind kind, double beta,
                       const Interval& interval, const ErrorOptions& options = {});

ErrorReport error_norm(const TestFunction& f, OperatorKind kind, NormKind p, double beta,
                       const Interval& interval, const ErrorOptions& options = {});

/// One report per beta, in input order. betas must be non-empty and strictly
/// decreasing. Elements run on up to `threads` workers (0 = hardware
/// concurrency); the output does not depend on the thread count.
std::vector<ErrorReport> error_sweep(const TestFunction& f, OperatorKind kind, NormKind p,
                                     std::span<const double> betas, const Interval& interval,
                                     const ErrorOptions& options = {}, unsigned threads = 1);

}  // namespace fracorder
