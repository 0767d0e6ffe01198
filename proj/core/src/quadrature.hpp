#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracorder/funcat.hpp"

namespace fracorder::detail {

// Samples the integrand factor at a node. `side` tells which piece the node
// belongs to when it sits on a piece boundary.
using NodeSampler = std::function<double(double s, Side side)>;

// Piece boundaries of [a, t] after splitting at the interior kinks.
std::vector<double> split_points(double a, double t, std::span<const double> kinks);

// integral_a^t g(s) (t - s)^{-mu} ds, g linearly interpolated on each cell
// and the weight integrated exactly. one_minus_mu is passed separately so
// that tiny values of 1 - mu keep full precision.
double power_kernel_integral(const NodeSampler& g, std::span<const double> pieces,
                             std::size_t n_nodes, double mu, double one_minus_mu);

// integral_a^t g(s) e^{-rate (t - s)} ds, same interpolation.
double exponential_kernel_integral(const NodeSampler& g, std::span<const double> pieces,
                                   std::size_t n_nodes, double rate);

// integral_a^t g(s) k(t - s) ds by composite 15-point Kronrod cells; cells
// next to s = t are graded geometrically when k is singular at zero.
double kernel_integral(const NodeSampler& g, const std::function<double(double)>& k,
                       std::span<const double> pieces, std::size_t n_nodes, bool singular);

// Cell moments for the power kernel, in units of the cell width:
//   A = integral_kappa^{kappa+1} s^{-mu} ds
//   B = integral_kappa^{kappa+1} (s - kappa) s^{-mu} ds
struct PowerMoments {
  double a;
  double b;
};
PowerMoments power_moments(double kappa, double mu, double one_minus_mu);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) integration over consecutive
// pieces, each first cut into cells graded geometrically toward its left
// end. Throws BudgetExceededError past max_evaluations.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& fn,
                                  std::span<const double> pieces, double tol,
                                  std::size_t max_evaluations);

// Fixed 15-point Kronrod rule on [lo, hi].
double kronrod15(const std::function<double(double)>& fn, double lo, double hi);

}  // namespace fracorder::detail
