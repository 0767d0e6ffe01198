#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracorder/fractional_order.hpp"

namespace fracorder {

/// Bounded interval (a, b) with a < b, both finite.
class Interval {
 public:
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

// (t - origin)^exponent
struct Power {
  double exponent;
  double origin;
};

// slope * t + intercept
struct Affine {
  double slope;
  double intercept;
};

struct Exponential {};

struct Cosine {};

// |t - center|
struct AbsShift {
  double center;
};

// One piece q * chi_[left, right] of a simple function.
struct Step {
  double left;
  double right;
  double height;
};

// t -> integral from -inf to t of sum_i q_i chi_[a_i, b_i]: continuous and
// piecewise linear, zero to the left of the first step.
struct StepAntiderivative {
  std::vector<Step> steps;
};

/// Immutable catalog entry. Build through the named factories, which
/// validate the parameters.
class TestFunction {
 public:
  using Variant = std::variant<Power, Affine, Exponential, Cosine, AbsShift, StepAntiderivative>;

  static TestFunction power(double exponent, double origin = 0.0);
  static TestFunction affine(double slope, double intercept);
  static TestFunction exponential();
  static TestFunction cosine();
  static TestFunction abs_shift(double center);
  static TestFunction step_antiderivative(const std::vector<std::pair<double, double>>& breaks,
                                          const std::vector<double>& heights);

  /// Parses "power:2", "power:2,0.5", "affine:1,1", "exp", "cos", "abs:1",
  /// "step:a1,b1,q1;a2,b2,q2;...".
  static TestFunction parse(std::string_view id);

  /// Canonical string id; parse(f.id()) reproduces f.
  std::string id() const;

  const Variant& variant() const noexcept { return value_; }

  /// Points where f' jumps or blows up, sorted ascending.
  std::vector<double> kinks() const;

 private:
  explicit TestFunction(Variant value) : value_(std::move(value)) {}

  Variant value_;
};

enum class Side { Left, Right };

double eval(const TestFunction& f, double t);

/// Classical derivative; throws NonDifferentiableError at kinks.
double eval_derivative(const TestFunction& f, double t);

/// One-sided limit of f' at t. Equals eval_derivative away from kinks.
double derivative_limit(const TestFunction& f, double t, Side side);

/// Closed-form fractional derivative of the given kind with lower limit a,
/// evaluated at t > a. Empty when no closed form is known for the pair
/// (variant, kind); callers then fall back to quadrature.
std::optional<double> closed_form_fractional(const TestFunction& f, OperatorKind kind,
                                             FractionalOrder order, double a, double t);

}  // namespace fracorder
