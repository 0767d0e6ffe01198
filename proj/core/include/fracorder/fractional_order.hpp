#pragma once

#include <string>
#include <string_view>

namespace fracorder {

/// A differentiation order alpha in the open interval (0, 1).
///
/// Both alpha and its complement 1 - alpha are stored. Orders built with
/// from_beta() keep beta = 1 - alpha exact, which matters when beta is tiny:
/// recovering it as 1 - alpha would lose most of its significant digits.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);

  static FractionalOrder from_beta(double beta);

  double alpha() const noexcept { return alpha_; }
  double complement() const noexcept { return complement_; }

  // alpha / (1 - alpha), the decay rate of the Caputo-Fabrizio kernel.
  double cf_rate() const noexcept { return alpha_ / complement_; }

 private:
  FractionalOrder(double alpha, double complement) noexcept
      : alpha_(alpha), complement_(complement) {}

  double alpha_;
  double complement_;
};

enum class OperatorKind { RiemannLiouville, Caputo, CaputoFabrizio };

std::string_view to_string(OperatorKind kind) noexcept;
OperatorKind parse_operator_kind(std::string_view text);

}  // namespace fracorder
