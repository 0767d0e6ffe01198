#include "fracorder/fractional_order.hpp"

#include <cmath>
#include <string>

#include "fracorder/errors.hpp"

namespace fracorder {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha), complement_(1.0 - alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("fractional order must lie in (0, 1), got " + std::to_string(alpha));
  }
}

FractionalOrder FractionalOrder::from_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("beta must lie in (0, 1), got " + std::to_string(beta));
  }
  return FractionalOrder(1.0 - beta, beta);
}

std::string_view to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::RiemannLiouville: return "RL";
    case OperatorKind::Caputo: return "C";
    case OperatorKind::CaputoFabrizio: return "CF";
  }
  return "?";
}

OperatorKind parse_operator_kind(std::string_view text) {
  if (text == "RL") return OperatorKind::RiemannLiouville;
  if (text == "C") return OperatorKind::Caputo;
  if (text == "CF") return OperatorKind::CaputoFabrizio;
  throw DomainError("unknown operator kind '" + std::string(text) + "' (expected RL, C or CF)");
}

}  // namespace fracorder
