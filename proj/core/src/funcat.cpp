#include "fracorder/funcat.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <string>

#include "fracorder/errors.hpp"
#include "fracorder/specfun.hpp"
#include "numeric.hpp"

namespace fracorder {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_integer(double x) { return x == std::floor(x); }

double parse_number(std::string_view text, std::string_view id) {
  double value = 0.0;
  auto const* first = text.data();
  auto const* last = text.data() + text.size();
  auto const [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("bad number '" + std::string(text) + "' in function id '" +
                      std::string(id) + "'");
  }
  return value;
}

std::vector<double> parse_numbers(std::string_view text, std::string_view id) {
  std::vector<double> values;
  while (true) {
    auto const comma = text.find(',');
    values.push_back(parse_number(text.substr(0, comma), id));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

// Derivative pieces (left, right, height) of a piecewise-linear function,
// clipped to [a, t]. Empty optional for variants that are not piecewise
// linear.
std::optional<std::vector<Step>> derivative_pieces(const TestFunction& f, double a, double t) {
  return std::visit(
      Overloaded{
          [&](const Affine& g) -> std::optional<std::vector<Step>> {
            return std::vector<Step>{{a, t, g.slope}};
          },
          [&](const AbsShift& g) -> std::optional<std::vector<Step>> {
            if (t <= g.center) return std::vector<Step>{{a, t, -1.0}};
            if (a >= g.center) return std::vector<Step>{{a, t, 1.0}};
            return std::vector<Step>{{a, g.center, -1.0}, {g.center, t, 1.0}};
          },
          [&](const StepAntiderivative& g) -> std::optional<std::vector<Step>> {
            std::vector<Step> pieces;
            for (const Step& s : g.steps) {
              double const left = std::max(s.left, a);
              double const right = std::min(s.right, t);
              if (right > left) pieces.push_back({left, right, s.height});
            }
            return pieces;
          },
          [](const auto&) -> std::optional<std::vector<Step>> { return std::nullopt; },
      },
      f.variant());
}

double caputo_of_pieces(const std::vector<Step>& pieces, FractionalOrder order, double t) {
  double const beta = order.complement();
  double sum = 0.0;
  for (const Step& p : pieces) {
    sum += p.height * detail::pow_difference(t - p.left, t - p.right, beta);
  }
  return sum / specfun::gamma(1.0 + beta);
}

double caputo_fabrizio_of_pieces(const std::vector<Step>& pieces, FractionalOrder order,
                                 double t) {
  double const rate = order.cf_rate();
  double sum = 0.0;
  for (const Step& p : pieces) {
    sum += p.height * std::exp(-rate * (t - p.right)) * -std::expm1(-rate * (p.right - p.left));
  }
  return sum / order.alpha();
}

// 1 - Gamma(g) E_{1,g}(z) for |z| <= 1, summed without the leading 1.
double one_minus_scaled_ml_small(double g, double z) {
  double term = 1.0;
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    term *= z / (g + k);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return -sum;
}

std::optional<double> power_closed_form(const Power& p, OperatorKind kind, FractionalOrder order,
                                        double a, double t) {
  if (a != p.origin) return std::nullopt;
  double const gamma_exp = p.exponent;
  double const x = t - a;
  if (kind == OperatorKind::CaputoFabrizio) {
    double const z = -order.cf_rate() * x;
    double bracket = 0.0;
    if (std::abs(z) <= 1.0) {
      bracket = one_minus_scaled_ml_small(gamma_exp, z);
    } else if (gamma_exp <= 170.0) {
      bracket = 1.0 - specfun::gamma(gamma_exp) * specfun::mittag_leffler_one(gamma_exp, z);
    } else {
      return std::nullopt;
    }
    return gamma_exp / order.alpha() * std::pow(x, gamma_exp - 1.0) * bracket;
  }
  // Caputo and RL coincide because f(a) = 0.
  double const ratio =
      std::exp(specfun::ln_gamma(gamma_exp + 1.0) - specfun::ln_gamma(gamma_exp + order.complement()));
  return ratio * std::pow(x, gamma_exp - order.alpha());
}

}  // namespace

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("interval requires finite a < b, got (" + std::to_string(a) + ", " +
                      std::to_string(b) + ")");
  }
}

TestFunction TestFunction::power(double exponent, double origin) {
  if (!(exponent > 0.0) || !std::isfinite(exponent) || !std::isfinite(origin)) {
    throw DomainError("power: exponent must be positive and finite");
  }
  return TestFunction(Power{exponent, origin});
}

TestFunction TestFunction::affine(double slope, double intercept) {
  if (!std::isfinite(slope) || !std::isfinite(intercept)) {
    throw DomainError("affine: coefficients must be finite");
  }
  return TestFunction(Affine{slope, intercept});
}

TestFunction TestFunction::exponential() { return TestFunction(Exponential{}); }

TestFunction TestFunction::cosine() { return TestFunction(Cosine{}); }

TestFunction TestFunction::abs_shift(double center) {
  if (!std::isfinite(center)) throw DomainError("abs: center must be finite");
  return TestFunction(AbsShift{center});
}

TestFunction TestFunction::step_antiderivative(
    const std::vector<std::pair<double, double>>& breaks, const std::vector<double>& heights) {
  if (breaks.size() != heights.size()) {
    throw DomainError("step: breaks and heights must have equal length");
  }
  if (breaks.empty()) throw DomainError("step: at least one step is required");
  StepAntiderivative g;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    auto const [left, right] = breaks[i];
    if (!std::isfinite(left) || !std::isfinite(right) || !std::isfinite(heights[i]) ||
        !(left < right)) {
      throw DomainError("step: each subinterval needs finite a_i < b_i and a finite height");
    }
    if (i > 0 && left < breaks[i - 1].second) {
      throw DomainError("step: subintervals must be ordered and non-overlapping");
    }
    g.steps.push_back({left, right, heights[i]});
  }
  return TestFunction(std::move(g));
}

TestFunction TestFunction::parse(std::string_view id) {
  auto const colon = id.find(':');
  std::string_view const name = id.substr(0, colon);
  std::string_view const args =
      colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1);
  auto const expect_args = [&](std::size_t min, std::size_t max) {
    if (args.empty()) throw DomainError("function id '" + std::string(id) + "' needs parameters");
    auto values = parse_numbers(args, id);
    if (values.size() < min || values.size() > max) {
      throw DomainError("wrong number of parameters in function id '" + std::string(id) + "'");
    }
    return values;
  };
  if (name == "exp" && args.empty()) return exponential();
  if (name == "cos" && args.empty()) return cosine();
  if (name == "power") {
    auto const v = expect_args(1, 2);
    return power(v[0], v.size() > 1 ? v[1] : 0.0);
  }
  if (name == "affine") {
    auto const v = expect_args(2, 2);
    return affine(v[0], v[1]);
  }
  if (name == "abs") {
    auto const v = expect_args(1, 1);
    return abs_shift(v[0]);
  }
  if (name == "step" && !args.empty()) {
    std::vector<std::pair<double, double>> breaks;
    std::vector<double> heights;
    std::string_view rest = args;
    while (!rest.empty()) {
      auto const semicolon = rest.find(';');
      auto const v = parse_numbers(rest.substr(0, semicolon), id);
      if (v.size() != 3) {
        throw DomainError("step spec expects a,b,q triples in '" + std::string(id) + "'");
      }
      breaks.emplace_back(v[0], v[1]);
      heights.push_back(v[2]);
      if (semicolon == std::string_view::npos) break;
      rest.remove_prefix(semicolon + 1);
    }
    return step_antiderivative(breaks, heights);
  }
  throw DomainError("unknown function id '" + std::string(id) + "'");
}

std::string TestFunction::id() const {
  using detail::format_shortest;
  return std::visit(
      Overloaded{
          [](const Power& p) {
            std::string s = "power:" + format_shortest(p.exponent);
            if (p.origin != 0.0) s += "," + format_shortest(p.origin);
            return s;
          },
          [](const Affine& g) {
            return "affine:" + format_shortest(g.slope) + "," + format_shortest(g.intercept);
          },
          [](const Exponential&) { return std::string("exp"); },
          [](const Cosine&) { return std::string("cos"); },
          [](const AbsShift& g) { return "abs:" + format_shortest(g.center); },
          [](const StepAntiderivative& g) {
            std::string s = "step:";
            for (std::size_t i = 0; i < g.steps.size(); ++i) {
              if (i > 0) s += ";";
              s += format_shortest(g.steps[i].left) + "," + format_shortest(g.steps[i].right) +
                   "," + format_shortest(g.steps[i].height);
            }
            return s;
          },
      },
      value_);
}

std::vector<double> TestFunction::kinks() const {
  return std::visit(Overloaded{
                        [](const Power& p) {
                          return is_integer(p.exponent) ? std::vector<double>{}
                                                        : std::vector<double>{p.origin};
                        },
                        [](const AbsShift& g) { return std::vector<double>{g.center}; },
                        [](const StepAntiderivative& g) {
                          std::vector<double> points;
                          for (const Step& s : g.steps) {
                            points.push_back(s.left);
                            points.push_back(s.right);
                          }
                          points.erase(std::unique(points.begin(), points.end()), points.end());
                          return points;
                        },
                        [](const auto&) { return std::vector<double>{}; },
                    },
                    value_);
}

double eval(const TestFunction& f, double t) {
  return std::visit(
      Overloaded{
          [&](const Power& p) {
            if (t < p.origin && !is_integer(p.exponent)) {
              throw DomainError("power: t below origin with non-integer exponent");
            }
            return std::pow(t - p.origin, p.exponent);
          },
          [&](const Affine& g) { return g.slope * t + g.intercept; },
          [&](const Exponential&) { return std::exp(t); },
          [&](const Cosine&) { return std::cos(t); },
          [&](const AbsShift& g) { return std::abs(t - g.center); },
          [&](const StepAntiderivative& g) {
            double sum = 0.0;
            for (const Step& s : g.steps) {
              sum += s.height * std::clamp(t - s.left, 0.0, s.right - s.left);
            }
            return sum;
          },
      },
      f.variant());
}

double eval_derivative(const TestFunction& f, double t) {
  return std::visit(
      Overloaded{
          [&](const Power& p) {
            if (t < p.origin && !is_integer(p.exponent)) {
              throw DomainError("power: t below origin with non-integer exponent");
            }
            if (t == p.origin && p.exponent < 1.0) {
              throw NonDifferentiableError("power: derivative unbounded at the origin");
            }
            return p.exponent * std::pow(t - p.origin, p.exponent - 1.0);
          },
          [&](const Affine& g) { return g.slope; },
          [&](const Exponential&) { return std::exp(t); },
          [&](const Cosine&) { return -std::sin(t); },
          [&](const AbsShift& g) {
            if (t == g.center) throw NonDifferentiableError("abs: derivative undefined at center");
            return t > g.center ? 1.0 : -1.0;
          },
          [&](const StepAntiderivative& g) {
            double sum = 0.0;
            for (const Step& s : g.steps) {
              if (t == s.left || t == s.right) {
                throw NonDifferentiableError("step: derivative undefined at a breakpoint");
              }
              if (t > s.left && t < s.right) sum += s.height;
            }
            return sum;
          },
      },
      f.variant());
}

double derivative_limit(const TestFunction& f, double t, Side side) {
  bool const right = side == Side::Right;
  if (const auto* g = std::get_if<AbsShift>(&f.variant()); g && t == g->center) {
    return right ? 1.0 : -1.0;
  }
  if (const auto* g = std::get_if<StepAntiderivative>(&f.variant())) {
    double sum = 0.0;
    for (const Step& s : g->steps) {
      bool const inside = right ? (t >= s.left && t < s.right) : (t > s.left && t <= s.right);
      if (inside) sum += s.height;
    }
    return sum;
  }
  if (const auto* p = std::get_if<Power>(&f.variant()); p && t == p->origin) {
    if (!right && !is_integer(p->exponent)) {
      throw DomainError("power: no left limit at the origin for a non-integer exponent");
    }
    if (p->exponent < 1.0) return std::numeric_limits<double>::infinity();
    return p->exponent == 1.0 ? 1.0 : 0.0;
  }
  return eval_derivative(f, t);
}

std::optional<double> closed_form_fractional(const TestFunction& f, OperatorKind kind,
                                             FractionalOrder order, double a, double t) {
  if (!(t > a)) return std::nullopt;

  if (const auto* p = std::get_if<Power>(&f.variant())) {
    return power_closed_form(*p, kind, order, a, t);
  }
  if (std::holds_alternative<Exponential>(f.variant())) {
    if (kind != OperatorKind::CaputoFabrizio) return std::nullopt;
    return std::exp(t) - std::exp(a - order.cf_rate() * (t - a));
  }

  auto const pieces = derivative_pieces(f, a, t);
  if (!pieces) return std::nullopt;
  switch (kind) {
    case OperatorKind::Caputo:
      return caputo_of_pieces(*pieces, order, t);
    case OperatorKind::CaputoFabrizio:
      return caputo_fabrizio_of_pieces(*pieces, order, t);
    case OperatorKind::RiemannLiouville: {
      double const boundary =
          eval(f, a) * std::pow(t - a, -order.alpha()) / specfun::gamma(order.complement());
      return boundary + caputo_of_pieces(*pieces, order, t);
    }
  }
  return std::nullopt;
}

}  // namespace fracorder
