#include "fracorder/norms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "fracorder/errors.hpp"
#include "fracorder/specfun.hpp"
#include "numeric.hpp"
#include "quadrature.hpp"

namespace fracorder {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// |D f(t) - f'(t)|, taking the worse side at a kink.
class ErrorProfile {
 public:
  ErrorProfile(const TestFunction& f, OperatorKind kind, FractionalOrder order, double a,
               const QuadratureScheme& scheme)
      : f_(f), kind_(kind), order_(order), a_(a), scheme_(scheme), kinks_(f.kinks()) {}

  double operator_value(double t) const {
    return fractional_derivative(kind_, f_, order_, a_, t, scheme_);
  }

  double operator()(double t) const {
    double const d = operator_value(t);
    if (std::binary_search(kinks_.begin(), kinks_.end(), t)) {
      return std::max(std::abs(d - derivative_limit(f_, t, Side::Left)),
                      std::abs(d - derivative_limit(f_, t, Side::Right)));
    }
    return std::abs(d - eval_derivative(f_, t));
  }

  // Signed Caputo remainder C f(t) - f'(t); used next to a RL singularity.
  double caputo_remainder(double t) const {
    return caputo(f_, order_, a_, t, scheme_) - derivative_limit(f_, t, Side::Right);
  }

  const std::vector<double>& kinks() const { return kinks_; }

 private:
  const TestFunction& f_;
  OperatorKind kind_;
  FractionalOrder order_;
  double a_;
  QuadratureScheme scheme_;
  std::vector<double> kinks_;
};

// Width delta of a layer (a, a + delta] on which the RL boundary term
// s(t) = f(a) (t - a)^{-alpha} / Gamma(beta) dominates the Caputo remainder,
// so that |s + r| = sign(f(a)) (s + r) there.
std::optional<double> dominated_layer(const ErrorProfile& profile, double boundary_value,
                                      FractionalOrder order, double a, double b) {
  double delta = b - a;
  for (int halving = 0; halving < 200; ++halving, delta *= 0.5) {
    double const s_min = std::abs(boundary_value) * std::pow(delta, -order.alpha()) /
                         specfun::gamma(order.complement());
    bool dominated = true;
    double probe = delta;
    for (int k = 0; k < 48 && dominated; ++k, probe *= 0.5) {
      dominated = std::abs(profile.caputo_remainder(a + probe)) <= s_min;
    }
    if (dominated) return delta;
  }
  return std::nullopt;
}

template <class First, class... Rest>
[[noreturn]] void rethrow_with_context(std::exception_ptr error, const std::string& context) {
  try {
    std::rethrow_exception(error);
  } catch (const First& e) {
    throw First(context + e.what());
  } catch (...) {
    if constexpr (sizeof...(Rest) > 0) {
      rethrow_with_context<Rest...>(std::current_exception(), context);
    } else {
      throw;
    }
  }
}

}  // namespace

std::string_view to_string(NormKind p) noexcept { return p == NormKind::L1 ? "1" : "inf"; }

NormKind parse_norm_kind(std::string_view text) {
  if (text == "1") return NormKind::L1;
  if (text == "inf") return NormKind::LInf;
  throw DomainError("unknown norm '" + std::string(text) + "' (expected 1 or inf)");
}

ErrorReport error_l1(const TestFunction& f, OperatorKind kind, double beta,
                     const Interval& interval, const ErrorOptions& options) {
  FractionalOrder const order = FractionalOrder::from_beta(beta);
  if (!(options.tol > 0.0)) throw DomainError("error_l1: tol must be positive");
  options.scheme.validate();
  double const a = interval.a();
  double const b = interval.b();
  ErrorProfile const profile(f, kind, order, a, options.scheme);

  double value = 0.0;
  std::size_t evaluations = 0;
  double start = a;
  double const boundary_value = eval(f, a);
  if (kind == OperatorKind::RiemannLiouville && boundary_value != 0.0) {
    auto const delta = dominated_layer(profile, boundary_value, order, a, b);
    if (!delta) {
      throw NumericalError("error_l1: could not isolate the RL boundary singularity");
    }
    // integral_a^{a+delta} s = f(a) delta^beta / Gamma(1 + beta)
    double const singular_part = std::abs(boundary_value) * std::pow(*delta, order.complement()) /
                                 specfun::gamma(1.0 + order.complement());
    auto const layer_pieces = detail::split_points(a, a + *delta, profile.kinks());
    auto const remainder = detail::integrate_adaptive(
        [&](double t) { return profile.caputo_remainder(t); }, layer_pieces, 0.5 * options.tol,
        options.max_evaluations);
    value = singular_part + std::copysign(1.0, boundary_value) * remainder.value;
    evaluations = remainder.evaluations;
    start = a + *delta;
  }
  if (start < b) {
    auto const pieces = detail::split_points(start, b, profile.kinks());
    auto const main = detail::integrate_adaptive(profile, pieces, 0.5 * options.tol,
                                                 options.max_evaluations - evaluations);
    value += main.value;
    evaluations += main.evaluations;
  }
  return {kind, beta, NormKind::L1, interval, std::max(value, 0.0), evaluations};
}

ErrorReport error_linf(const TestFunction& f, OperatorKind kind, double beta,
                       const Interval& interval, const ErrorOptions& options) {
  FractionalOrder const order = FractionalOrder::from_beta(beta);
  if (options.n_grid < 2) throw DomainError("error_linf: n_grid must be at least 2");
  options.scheme.validate();
  double const a = interval.a();
  double const b = interval.b();
  ErrorProfile const profile(f, kind, order, a, options.scheme);
  std::size_t evaluations = 0;

  // Limit at t -> a+: C and CF vanish there, RL blows up unless f(a) = 0.
  double best = std::abs(derivative_limit(f, a, Side::Right));
  if (kind == OperatorKind::RiemannLiouville && eval(f, a) != 0.0) best = kInfinity;

  double const step = (b - a) / static_cast<double>(options.n_grid - 1);
  std::size_t best_index = 0;
  double best_grid = -1.0;
  for (std::size_t i = 1; i < options.n_grid; ++i) {
    double const t = i + 1 == options.n_grid ? b : a + static_cast<double>(i) * step;
    double const e = profile(t);
    ++evaluations;
    if (e > best_grid) {
      best_grid = e;
      best_index = i;
    }
  }

  // Golden-section refinement between the neighbours of the grid maximum.
  double lo = a + static_cast<double>(best_index - 1) * step;
  double hi = std::min(b, a + static_cast<double>(best_index + 1) * step);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double e1 = profile(x1);
  double e2 = profile(x2);
  evaluations += 2;
  for (int iter = 0; iter < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++iter) {
    if (e1 > e2) {
      hi = x2;
      x2 = x1;
      e2 = e1;
      x1 = hi - kInvPhi * (hi - lo);
      e1 = profile(x1);
    } else {
      lo = x1;
      x1 = x2;
      e1 = e2;
      x2 = lo + kInvPhi * (hi - lo);
      e2 = profile(x2);
    }
    ++evaluations;
  }
  best = std::max({best, best_grid, e1, e2});

  for (double kink : profile.kinks()) {
    if (kink > a && kink <= b) {
      best = std::max(best, profile(kink));
      ++evaluations;
    }
  }
  return {kind, beta, NormKind::LInf, interval, best, evaluations};
}

ErrorReport error_norm(const TestFunction& f, OperatorKind kind, NormKind p, double beta,
                       const Interval& interval, const ErrorOptions& options) {
  return p == NormKind::L1 ? error_l1(f, kind, beta, interval, options)
                           : error_linf(f, kind, beta, interval, options);
}

std::vector<ErrorReport> error_sweep(const TestFunction& f, OperatorKind kind, NormKind p,
                                     std::span<const double> betas, const Interval& interval,
                                     const ErrorOptions& options, unsigned threads) {
  if (betas.empty()) throw DomainError("error_sweep: betas must be non-empty");
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i] < betas[i - 1])) {
      throw DomainError("error_sweep: betas must be strictly decreasing");
    }
  }
  std::vector<std::optional<ErrorReport>> results(betas.size());
  std::vector<std::exception_ptr> failures(betas.size());
  std::atomic<std::size_t> next{0};
  auto const worker = [&] {
    for (std::size_t i = next++; i < betas.size(); i = next++) {
      try {
        results[i] = error_norm(f, kind, p, betas[i], interval, options);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  unsigned const workers = std::min<unsigned>(threads, static_cast<unsigned>(betas.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::vector<ErrorReport> reports;
  reports.reserve(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (failures[i]) {
      rethrow_with_context<BudgetExceededError, NonConvergenceError, BracketingError,
                           NumericalError, NonDifferentiableError, DomainError>(
          failures[i], "beta = " + detail::format_shortest(betas[i]) + ": ");
    }
    reports.push_back(*results[i]);
  }
  return reports;
}

}  // namespace fracorder
