#include "fracorder/operators.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fracorder/errors.hpp"
#include "fracorder/specfun.hpp"
#include "quadrature.hpp"

namespace fracorder {
namespace {

void require_after(double a, double t) {
  if (!std::isfinite(a) || !std::isfinite(t) || !(t > a)) {
    throw DomainError("evaluation point must satisfy t > a, got a = " + std::to_string(a) +
                      ", t = " + std::to_string(t));
  }
}

detail::NodeSampler derivative_sampler(const TestFunction& f) {
  return [&f](double s, Side side) { return derivative_limit(f, s, side); };
}

std::vector<double> pieces_for(const TestFunction& f, double a, double t) {
  auto const kinks = f.kinks();
  return detail::split_points(a, t, kinks);
}

}  // namespace

void QuadratureScheme::validate() const {
  if (n_nodes < 2) {
    throw DomainError("quadrature needs at least 2 nodes, got " + std::to_string(n_nodes));
  }
}

KernelSpec KernelSpec::caputo() { return KernelSpec(Type::Caputo, nullptr, true); }

KernelSpec KernelSpec::caputo_fabrizio() {
  return KernelSpec(Type::CaputoFabrizio, nullptr, false);
}

KernelSpec KernelSpec::custom(Function h, bool singular_at_zero) {
  if (!h) throw DomainError("custom kernel: empty function");
  for (double beta : {0.1, 0.5, 0.9}) {
    auto const magnitude = [&](double s) {
      double const v = h(s, beta);
      if (!std::isfinite(v)) {
        throw DomainError("custom kernel: non-finite value h(" + std::to_string(s) + ", " +
                          std::to_string(beta) + ")");
      }
      return std::abs(v);
    };
    // integral_0^1 |h| over dyadic cells shrinking toward the origin.
    // An integrable singularity makes the dyadic contributions decay
    // geometrically; 1/u-type kernels give a constant contribution per level.
    double total = 0.0;
    double width = 1.0;
    double previous = 0.0;
    double last = 0.0;
    for (int level = 0; level < 60; ++level) {
      previous = last;
      last = detail::kronrod15(magnitude, 0.5 * width, width);
      total += last;
      width *= 0.5;
    }
    total += detail::kronrod15(magnitude, 0.0, width);
    if (!std::isfinite(total)) {
      throw DomainError("custom kernel: integral of |h| over (0, 1] is not finite");
    }
    if (last > 1e-12 * total && last > 0.99 * previous) {
      throw DomainError("custom kernel: |h| is not integrable at t = 0 (beta = " +
                        std::to_string(beta) + ")");
    }
  }
  return KernelSpec(Type::Custom, std::move(h), singular_at_zero);
}

double KernelSpec::operator()(double t, double beta) const {
  switch (type_) {
    case Type::Caputo:
      return std::pow(t, -(1.0 - beta)) / specfun::gamma(beta);
    case Type::CaputoFabrizio:
      return std::exp(-((1.0 - beta) / beta) * t) / beta;
    case Type::Custom:
      return function_(t, beta);
  }
  return 0.0;
}

double rl_integral(const TestFunction& f, FractionalOrder order, double a, double t,
                   const QuadratureScheme& scheme) {
  require_after(a, t);
  scheme.validate();
  auto const pieces = pieces_for(f, a, t);
  detail::NodeSampler const sampler = [&f](double s, Side) { return eval(f, s); };
  // Kernel (t - s)^{alpha - 1}: exponent mu = 1 - alpha.
  double const integral = detail::power_kernel_integral(sampler, pieces, scheme.n_nodes,
                                                        order.complement(), order.alpha());
  return integral / specfun::gamma(order.alpha());
}

double caputo_quadrature(const TestFunction& f, FractionalOrder order, double a, double t,
                         const QuadratureScheme& scheme) {
  require_after(a, t);
  scheme.validate();
  auto const pieces = pieces_for(f, a, t);
  double const integral = detail::power_kernel_integral(
      derivative_sampler(f), pieces, scheme.n_nodes, order.alpha(), order.complement());
  return integral / specfun::gamma(order.complement());
}

double caputo(const TestFunction& f, FractionalOrder order, double a, double t,
              const QuadratureScheme& scheme) {
  require_after(a, t);
  if (auto const exact = closed_form_fractional(f, OperatorKind::Caputo, order, a, t)) {
    return *exact;
  }
  return caputo_quadrature(f, order, a, t, scheme);
}

double caputo_fabrizio_quadrature(const TestFunction& f, FractionalOrder order, double a,
                                  double t, const QuadratureScheme& scheme) {
  require_after(a, t);
  scheme.validate();
  auto const pieces = pieces_for(f, a, t);
  double const integral = detail::exponential_kernel_integral(derivative_sampler(f), pieces,
                                                              scheme.n_nodes, order.cf_rate());
  return integral / order.complement();
}

double caputo_fabrizio(const TestFunction& f, FractionalOrder order, double a, double t,
                       const QuadratureScheme& scheme) {
  require_after(a, t);
  if (auto const exact = closed_form_fractional(f, OperatorKind::CaputoFabrizio, order, a, t)) {
    return *exact;
  }
  return caputo_fabrizio_quadrature(f, order, a, t, scheme);
}

double riemann_liouville(const TestFunction& f, FractionalOrder order, double a, double t,
                         const QuadratureScheme& scheme) {
  require_after(a, t);
  double const boundary =
      eval(f, a) * std::pow(t - a, -order.alpha()) / specfun::gamma(order.complement());
  return boundary + caputo(f, order, a, t, scheme);
}

double generic_kernel_derivative(const TestFunction& f, const KernelSpec& h, double beta,
                                 double a, double t, const QuadratureScheme& scheme) {
  require_after(a, t);
  switch (h.type()) {
    case KernelSpec::Type::Caputo:
      return caputo(f, FractionalOrder::from_beta(beta), a, t, scheme);
    case KernelSpec::Type::CaputoFabrizio:
      return caputo_fabrizio(f, FractionalOrder::from_beta(beta), a, t, scheme);
    case KernelSpec::Type::Custom:
      break;
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1), got " + std::to_string(beta));
  }
  scheme.validate();
  auto const pieces = pieces_for(f, a, t);
  auto const kernel = [&](double u) { return h(u, beta); };
  return detail::kernel_integral(derivative_sampler(f), kernel, pieces, scheme.n_nodes,
                                 h.singular_at_zero());
}

double fractional_derivative(OperatorKind kind, const TestFunction& f, FractionalOrder order,
                             double a, double t, const QuadratureScheme& scheme) {
  switch (kind) {
    case OperatorKind::RiemannLiouville:
      return riemann_liouville(f, order, a, t, scheme);
    case OperatorKind::Caputo:
      return caputo(f, order, a, t, scheme);
    case OperatorKind::CaputoFabrizio:
      return caputo_fabrizio(f, order, a, t, scheme);
  }
  throw DomainError("unknown operator kind");
}

}  // namespace fracorder
