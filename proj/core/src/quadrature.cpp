#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "fracorder/errors.hpp"

namespace fracorder::detail {
namespace {

// 15-point Kronrod abscissae (non-negative half) and weights; the odd
// entries are the 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
  double kronrod;
  double gauss;
  double abs_kronrod;
};

RuleResult apply_rule(const std::function<double(double)>& fn, double lo, double hi) {
  double const center = 0.5 * (lo + hi);
  double const half = 0.5 * (hi - lo);
  double const f_center = fn(center);
  double kronrod = kKronrodWeights[7] * f_center;
  double gauss = kGaussWeights[3] * f_center;
  double abs_kronrod = kKronrodWeights[7] * std::abs(f_center);
  for (std::size_t i = 0; i < 7; ++i) {
    double const dx = half * kKronrodNodes[i];
    double const f1 = fn(center - dx);
    double const f2 = fn(center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    abs_kronrod += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  return {kronrod * half, gauss * half, abs_kronrod * std::abs(half)};
}

std::size_t cells_for(double piece_length, double total_length, std::size_t n_nodes) {
  double const share = static_cast<double>(n_nodes - 1) * piece_length / total_length;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(share)));
}

// Node values g(s_0..s_m) on one uniform piece, with one-sided limits at the
// piece ends.
std::vector<double> sample_piece(const NodeSampler& g, double lo, double hi, std::size_t cells) {
  std::vector<double> values(cells + 1);
  double const h = (hi - lo) / static_cast<double>(cells);
  values[0] = g(lo, Side::Right);
  for (std::size_t j = 1; j < cells; ++j) {
    values[j] = g(lo + static_cast<double>(j) * h, Side::Right);
  }
  values[cells] = g(hi, Side::Left);
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NumericalError("quadrature node value is not finite on [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");
    }
  }
  return values;
}

// integral_0^1 x e^{-mu x} dx
double exponential_first_moment(double mu) {
  if (mu < 0.5) {
    double sum = 0.0;
    double term = 1.0;  // (-mu)^n / n!
    for (int n = 0; n < 30; ++n) {
      double const contribution = term / (n + 2);
      sum += contribution;
      if (std::abs(contribution) < 1e-18) break;
      term *= -mu / (n + 1);
    }
    return sum;
  }
  return -(std::expm1(-mu) + mu * std::exp(-mu)) / (mu * mu);
}

}  // namespace

std::vector<double> split_points(double a, double t, std::span<const double> kinks) {
  std::vector<double> points{a};
  for (double k : kinks) {
    if (k > a && k < t) points.push_back(k);
  }
  std::sort(points.begin() + 1, points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points.push_back(t);
  return points;
}

PowerMoments power_moments(double kappa, double mu, double one_minus_mu) {
  if (kappa == 0.0) {
    return {1.0 / one_minus_mu, 1.0 / (1.0 + one_minus_mu)};
  }
  if (kappa >= 8.0) {
    // (1 + x/kappa)^{-mu} expanded binomially.
    double const inv = 1.0 / kappa;
    double coefficient = 1.0;
    double power = 1.0;
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (int n = 0; n < 60; ++n) {
      double const term = coefficient * power;
      sum_a += term / (n + 1);
      sum_b += term / (n + 2);
      if (std::abs(term) < 1e-18) break;
      coefficient *= (-mu - n) / (n + 1);
      power *= inv;
    }
    double const scale = std::pow(kappa, -mu);
    return {scale * sum_a, scale * sum_b};
  }
  double const log_ratio = std::log1p(1.0 / kappa);
  double const e = one_minus_mu;
  double const moment_a = std::pow(kappa, e) * std::expm1(e * log_ratio) / e;
  double const first = std::pow(kappa, 1.0 + e) * std::expm1((1.0 + e) * log_ratio) / (1.0 + e);
  return {moment_a, first - kappa * moment_a};
}

double power_kernel_integral(const NodeSampler& g, std::span<const double> pieces,
                             std::size_t n_nodes, double mu, double one_minus_mu) {
  double const a = pieces.front();
  double const t = pieces.back();
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    double const lo = pieces[p];
    double const hi = pieces[p + 1];
    std::size_t const cells = cells_for(hi - lo, t - a, n_nodes);
    double const h = (hi - lo) / static_cast<double>(cells);
    auto const values = sample_piece(g, lo, hi, cells);
    double const offset = (t - hi) / h;
    double sum = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      double const kappa = offset + static_cast<double>(cells - 1 - j);
      auto const [ma, mb] = power_moments(kappa, mu, one_minus_mu);
      sum += values[j + 1] * (ma - mb) + values[j] * mb;
    }
    total += std::pow(h, one_minus_mu) * sum;
  }
  return total;
}

double exponential_kernel_integral(const NodeSampler& g, std::span<const double> pieces,
                                   std::size_t n_nodes, double rate) {
  double const a = pieces.front();
  double const t = pieces.back();
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    double const lo = pieces[p];
    double const hi = pieces[p + 1];
    std::size_t const cells = cells_for(hi - lo, t - a, n_nodes);
    double const h = (hi - lo) / static_cast<double>(cells);
    auto const values = sample_piece(g, lo, hi, cells);
    double const mu = rate * h;
    double const m0 = mu == 0.0 ? 1.0 : -std::expm1(-mu) / mu;
    double const m1 = exponential_first_moment(mu);
    double sum = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      double const distance = (t - hi) + static_cast<double>(cells - 1 - j) * h;
      double const decay = std::exp(-rate * distance);
      if (decay == 0.0) continue;
      sum += decay * (values[j + 1] * (m0 - m1) + values[j] * m1);
    }
    total += h * sum;
  }
  return total;
}

double kronrod15(const std::function<double(double)>& fn, double lo, double hi) {
  return apply_rule(fn, lo, hi).kronrod;
}

double kernel_integral(const NodeSampler& g, const std::function<double(double)>& k,
                       std::span<const double> pieces, std::size_t n_nodes, bool singular) {
  double const a = pieces.front();
  double const t = pieces.back();
  std::size_t const budget = std::max<std::size_t>(n_nodes / 15, 4);
  // Integrate in the lag u = t - s so that lags next to the singularity are
  // represented exactly instead of as the difference of two close numbers.
  auto const integrand = [&](double u) {
    double const value = g(t - u, Side::Right) * k(u);
    if (!std::isfinite(value)) {
      throw NumericalError("kernel integration produced a non-finite value at lag " +
                           std::to_string(u));
    }
    return value;
  };
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    double const u_lo = t - pieces[p + 1];
    double const u_hi = t - pieces[p];
    std::size_t const cells = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(budget * (u_hi - u_lo) / (t - a))));
    double const h = (u_hi - u_lo) / static_cast<double>(cells);
    bool const graded = singular && p + 2 == pieces.size();
    std::size_t const first_uniform = graded ? 1 : 0;
    for (std::size_t j = first_uniform; j < cells; ++j) {
      total += kronrod15(integrand, u_lo + j * h, j + 1 == cells ? u_hi : u_lo + (j + 1) * h);
    }
    if (graded) {
      // u_lo == 0 here: dyadic cells toward the singular lag. Near u = 0 the
      // integrand behaves like a power of u, so successive contributions
      // shrink geometrically and the remaining tail is summed in closed form.
      double width = h;
      double previous = 0.0;
      double last = 0.0;
      for (int level = 0; level < 60; ++level) {
        previous = last;
        last = kronrod15(integrand, 0.5 * width, width);
        total += last;
        width *= 0.5;
      }
      double const ratio = previous != 0.0 ? last / previous : 0.0;
      if (ratio > 0.0 && ratio < 1.0) {
        total += last * ratio / (1.0 - ratio);
      } else {
        total += kronrod15(integrand, 0.0, width);
      }
    }
  }
  return total;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& fn,
                                  std::span<const double> pieces, double tol,
                                  std::size_t max_evaluations) {
  struct Cell {
    double lo;
    double hi;
    double value;
    double error;
    double abs_value;
    bool operator<(const Cell& other) const { return error < other.error; }
  };

  constexpr int kGradedLevels = 32;
  AdaptiveResult result;
  std::priority_queue<Cell> queue;
  std::vector<Cell> settled;

  auto const evaluate = [&](double lo, double hi) {
    if (result.evaluations + 15 > max_evaluations) {
      throw BudgetExceededError("adaptive integration exceeded " +
                                std::to_string(max_evaluations) + " evaluations");
    }
    auto const r = apply_rule(fn, lo, hi);
    result.evaluations += 15;
    return Cell{lo, hi, r.kronrod, std::abs(r.kronrod - r.gauss), r.abs_kronrod};
  };

  double total_error = 0.0;
  double total_abs = 0.0;
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    if (!(pieces[p + 1] > pieces[p])) continue;
    // Boundary layers sit at the left end of each piece (the start of the
    // memory after a kink); a geometric start grid keeps them visible to the
    // error estimate even when they are far narrower than the piece.
    double const lo = pieces[p];
    double hi = pieces[p + 1];
    for (int level = 0; level < kGradedLevels; ++level) {
      double const split = lo + 0.5 * (hi - lo);
      Cell const c = evaluate(level + 1 == kGradedLevels ? lo : split, hi);
      total_error += c.error;
      total_abs += c.abs_value;
      queue.push(c);
      hi = split;
    }
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  while (!queue.empty() && total_error > std::max(tol, 50.0 * kEps * total_abs)) {
    Cell const worst = queue.top();
    queue.pop();
    double const mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi) ||
        worst.hi - worst.lo < 1e3 * kEps * std::max(std::abs(worst.lo), std::abs(worst.hi))) {
      settled.push_back(worst);
      total_error -= worst.error;
      continue;
    }
    Cell const left = evaluate(worst.lo, mid);
    Cell const right = evaluate(mid, worst.hi);
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    queue.push(left);
    queue.push(right);
  }

  for (; !queue.empty(); queue.pop()) settled.push_back(queue.top());
  std::sort(settled.begin(), settled.end(),
            [](const Cell& x, const Cell& y) { return x.lo < y.lo; });
  for (const Cell& c : settled) {
    result.value += c.value;
    result.error += c.error;
  }
  return result;
}

}  // namespace fracorder::detail
