#pragma once

#include <cstddef>
#include <functional>

#include "fracorder/fractional_order.hpp"
#include "fracorder/funcat.hpp"

namespace fracorder {

/// Uniform-grid quadrature settings for the convolution operators. The grid
/// is split at the kinks of f' so every cell sees a smooth integrand; the
/// node budget is shared among the pieces in proportion to their length.
struct QuadratureScheme {
  enum class Kind {
    ProductTrapezoid,  // exact moments of (t - s)^{-mu} against a linear interpolant
    ExactExponential,  // exact moments of e^{-lambda (t - s)} against a linear interpolant
  };

  std::size_t n_nodes = 4096;
  Kind kind = Kind::ProductTrapezoid;

  void validate() const;
};

/// Convolution kernel h(t, beta) of the generic operator
///   D^{1-beta} f(t) = integral_a^t f'(s) h(t - s, beta) ds.
class KernelSpec {
 public:
  using Function = std::function<double(double t, double beta)>;
  enum class Type { Caputo, CaputoFabrizio, Custom };

  // t^{-(1-beta)} / Gamma(beta)
  static KernelSpec caputo();
  // e^{-((1-beta)/beta) t} / beta
  static KernelSpec caputo_fabrizio();
  // Runs a finiteness smoke test of integral_0^1 |h(s, beta)| ds for a few
  // beta values; throws DomainError when it fails.
  static KernelSpec custom(Function h, bool singular_at_zero);

  Type type() const noexcept { return type_; }
  bool singular_at_zero() const noexcept { return singular_; }
  double operator()(double t, double beta) const;

 private:
  KernelSpec(Type type, Function h, bool singular)
      : type_(type), function_(std::move(h)), singular_(singular) {}

  Type type_;
  Function function_;
  bool singular_;
};

/// (1 / Gamma(alpha)) integral_a^t f(s) (t - s)^{alpha - 1} ds.
double rl_integral(const TestFunction& f, FractionalOrder order, double a, double t,
                   const QuadratureScheme& scheme = {});

/// Caputo derivative. Uses the closed form when the catalog has one.
double caputo(const TestFunction& f, FractionalOrder order, double a, double t,
              const QuadratureScheme& scheme = {});

/// Caputo derivative by product integration, never the closed form.
double caputo_quadrature(const TestFunction& f, FractionalOrder order, double a, double t,
                         const QuadratureScheme& scheme = {});

/// Caputo-Fabrizio derivative. Uses the closed form when the catalog has one.
double caputo_fabrizio(const TestFunction& f, FractionalOrder order, double a, double t,
                       const QuadratureScheme& scheme = {4096,
                                                         QuadratureScheme::Kind::ExactExponential});

double caputo_fabrizio_quadrature(
    const TestFunction& f, FractionalOrder order, double a, double t,
    const QuadratureScheme& scheme = {4096, QuadratureScheme::Kind::ExactExponential});

/// Riemann-Liouville derivative through
///   f(a) (t - a)^{-alpha} / Gamma(1 - alpha) + Caputo derivative.
double riemann_liouville(const TestFunction& f, FractionalOrder order, double a, double t,
                         const QuadratureScheme& scheme = {});

/// (f' * h(., beta))(t) over (a, t). The built-in kernels route through
/// caputo() and caputo_fabrizio() at order 1 - beta.
double generic_kernel_derivative(const TestFunction& f, const KernelSpec& h, double beta, double a,
                                 double t, const QuadratureScheme& scheme = {});

/// Dispatch on the operator kind.
double fractional_derivative(OperatorKind kind, const TestFunction& f, FractionalOrder order,
                             double a, double t, const QuadratureScheme& scheme = {});

}  // namespace fracorder
