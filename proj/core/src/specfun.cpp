#include "fracorder/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "double_double.hpp"
#include "fracorder/errors.hpp"

namespace fracorder::specfun {
namespace {

using detail::DoubleDouble;

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kAsymptoticThreshold = -35.0;
constexpr double kSqrt2Pi = 2.5066282746310005024;

// zeta(k) - 1 for k = 2, 3, ...
constexpr std::array<double, 30> kZetaMinusOne = {
    0.64493406684822643647,   0.2020569031595942854,
    0.082323233711138191516,  0.036927755143369926331,
    0.017343061984449139715,  0.0083492773819228268398,
    0.0040773561979443393787, 0.0020083928260822144179,
    0.00099457512781808533715, 0.0004941886041194645587,
    0.00024608655330804829864, 0.00012271334757848914675,
    6.1248135058704829259e-5, 3.0588236307020493552e-5,
    1.5282259408651871733e-5, 7.6371976378997622736e-6,
    3.8172932649998398565e-6, 1.9082127165539389257e-6,
    9.5396203387279611315e-7, 4.7693298678780646312e-7,
    2.3845050272773299e-7,    1.1921992596531107307e-7,
    5.9608189051259479612e-8, 2.9803503514652280186e-8,
    1.4901554828365041235e-8, 7.450711789835429492e-9,
    3.7253340247884570548e-9, 1.8626597235130490064e-9,
    9.3132743241966818287e-10, 4.656629065033784073e-10};

// B_{2k}, k = 1..10.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,      1.0 / 42.0,     -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,  7.0 / 6.0,      -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0};

constexpr int kFactorialTableSize = 171;

constexpr std::array<double, kFactorialTableSize> make_factorials() {
  std::array<double, kFactorialTableSize> table{};
  table[0] = 1.0;
  for (int n = 1; n < kFactorialTableSize; ++n) {
    table[n] = table[n - 1] * n;
  }
  return table;
}

constexpr auto kFactorials = make_factorials();

void require_positive(double x, char const* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// ln Gamma(2 + e) for |e| <= 1/2 by its Taylor series about 2.
double ln_gamma_near_two(double e) {
  double sum = 0.0;
  double power = -e;  // term k carries (-1)^k e^k
  for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
    power *= -e;
    double const k = static_cast<double>(i + 2);
    double const term = kZetaMinusOne[i] * power / k;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return (1.0 - kEulerGamma) * e + sum;
}

// Bernoulli tail of Stirling's series for ln Gamma.
double stirling_correction(double x) {
  double const inv = 1.0 / x;
  double const inv2 = inv * inv;
  double correction = 0.0;
  double power = inv;
  for (std::size_t k = 1; k <= 8; ++k) {
    double const two_k = 2.0 * static_cast<double>(k);
    correction += kBernoulli[k - 1] / (two_k * (two_k - 1.0)) * power;
    power *= inv2;
  }
  return correction;
}

double ln_gamma_stirling(double x) {
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_correction(x);
}

// Gamma(x) = sqrt(2 pi) x^{x - 1/2} e^{-x} e^{correction}. The power is
// split in two halves to stay finite up to x = 171.6; going through
// exp(ln Gamma) would amplify the rounding of ln Gamma by its magnitude.
double gamma_stirling(double x) {
  double const half_power = std::pow(x, 0.5 * (x - 0.5));
  return kSqrt2Pi * half_power * (std::exp(-x) * half_power) * std::exp(stirling_correction(x));
}

bool is_small_integer(double x) {
  return x == std::floor(x) && x >= 1.0 && x <= kFactorialTableSize;
}

}  // namespace

double ln_gamma1p(double x) {
  if (!(x > -1.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma1p: argument must exceed -1, got " + std::to_string(x));
  }
  if (std::abs(x) <= 0.5) {
    return ln_gamma_near_two(x) - std::log1p(x);
  }
  return ln_gamma(1.0 + x);
}

double ln_gamma(double x) {
  require_positive(x, "ln_gamma");
  if (x < 0.5) return ln_gamma1p(x) - std::log(x);
  if (x <= 1.5) return ln_gamma1p(x - 1.0);
  if (x <= 2.5) return ln_gamma_near_two(x - 2.0);
  if (x < 10.0) {
    double const shift = std::ceil(x - 2.5);
    double y = x - shift;
    double product = 1.0;
    for (; y < x; y += 1.0) product *= y;
    return ln_gamma_near_two(x - shift - 2.0) + std::log(product);
  }
  return ln_gamma_stirling(x);
}

double gamma(double x) {
  require_positive(x, "gamma");
  if (is_small_integer(x)) {
    return kFactorials[static_cast<std::size_t>(x) - 1];
  }
  if (x < 0.5) return std::exp(ln_gamma1p(x)) / x;
  if (x <= 2.5) return std::exp(ln_gamma(x));
  if (x < 30.0) {
    double const shift = std::ceil(x - 2.5);
    double y = x - shift;
    double value = std::exp(ln_gamma_near_two(y - 2.0));
    for (; y < x; y += 1.0) value *= y;
    return value;
  }
  if (x > 171.7) return std::numeric_limits<double>::infinity();
  return gamma_stirling(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  while (x < 6.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  double const inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    series += kBernoulli[k - 1] / (2.0 * static_cast<double>(k)) * power;
    power *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series;
}

double mittag_leffler_one_series(double omega, double z) {
  require_positive(omega, "mittag_leffler_one_series");
  if (!std::isfinite(z)) {
    throw DomainError("mittag_leffler_one_series: z must be finite");
  }
  // sum_k prod_{j<k} z / (omega + j), scaled by 1 / Gamma(omega) at the end.
  DoubleDouble sum{1.0, 0.0};
  DoubleDouble term{1.0, 0.0};
  constexpr int kMaxTerms = 100000;
  for (int k = 0; k < kMaxTerms; ++k) {
    DoubleDouble const denominator = detail::two_sum(omega, static_cast<double>(k));
    term = (term * z) / denominator;
    sum = sum + term;
    if (!std::isfinite(sum.hi)) {
      throw NonConvergenceError("mittag_leffler_one_series: overflow at z = " +
                                std::to_string(z));
    }
    bool const past_peak = omega + k > std::abs(z);
    if (past_peak && std::abs(term.hi) <= 1e-18 * std::abs(sum.hi)) {
      return sum.value() / gamma(omega);
    }
  }
  throw NonConvergenceError("mittag_leffler_one_series: no convergence within 1e5 terms");
}

double mittag_leffler_one_closed(int omega, double z) {
  if (omega < 1) {
    throw DomainError("mittag_leffler_one_closed: omega must be a positive integer");
  }
  if (!std::isfinite(z) || z == 0.0) {
    throw DomainError("mittag_leffler_one_closed: z must be finite and non-zero");
  }
  int const m = omega - 1;
  if (m == 0) return std::exp(z);
  // z^{-m} e^z - sum_{k<m} z^{k-m} / k!, Neumaier-compensated.
  double sum = std::exp(z) * std::pow(z, -m);
  double compensation = 0.0;
  double inverse_power = 1.0 / std::pow(z, m);
  for (int k = 0; k < m; ++k) {
    double const term = -inverse_power / kFactorials[static_cast<std::size_t>(k)];
    double const next = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - next) + term;
    } else {
      compensation += (term - next) + sum;
    }
    sum = next;
    inverse_power *= z;
  }
  return sum + compensation;
}

double mittag_leffler_one_asymptotic(double omega, double z) {
  require_positive(omega, "mittag_leffler_one_asymptotic");
  if (!(z < 0.0) || !std::isfinite(z)) {
    throw DomainError("mittag_leffler_one_asymptotic: z must be finite and negative");
  }
  // a_k = -z^{-k} / Gamma(omega - k), a_{k+1} = a_k (omega - k - 1) / z.
  double term = -(omega - 1.0) / (z * gamma(omega));
  double sum = 0.0;
  double compensation = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 10000; ++k) {
    if (term == 0.0 || std::abs(term) > previous) break;  // exact or at its optimal point
    double const t = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    previous = std::abs(term);
    term *= (omega - k - 1.0) / z;
  }
  return sum + compensation;
}

double mittag_leffler_one(double omega, double z) {
  require_positive(omega, "mittag_leffler_one");
  if (!std::isfinite(z)) {
    throw DomainError("mittag_leffler_one: z must be finite");
  }
  if (z < -1.0 && omega == std::floor(omega) && omega <= 170.0) {
    return mittag_leffler_one_closed(static_cast<int>(omega), z);
  }
  if (z <= kAsymptoticThreshold) return mittag_leffler_one_asymptotic(omega, z);
  return mittag_leffler_one_series(omega, z);
}

double mittag_leffler(const MLParams& params, double z) {
  require_positive(params.rho, "mittag_leffler(rho)");
  require_positive(params.omega, "mittag_leffler(omega)");
  if (params.rho == 1.0) return mittag_leffler_one(params.omega, z);
  if (!std::isfinite(z)) {
    throw DomainError("mittag_leffler: z must be finite");
  }
  if (z == 0.0) return 1.0 / gamma(params.omega);
  double const log_abs_z = std::log(std::abs(z));
  DoubleDouble sum{};
  constexpr int kMaxTerms = 100000;
  for (int k = 0; k < kMaxTerms; ++k) {
    double const argument = params.rho * k + params.omega;
    double magnitude = std::exp(k * log_abs_z - ln_gamma(argument));
    if (z < 0.0 && (k % 2 == 1)) magnitude = -magnitude;
    sum = sum + DoubleDouble{magnitude, 0.0};
    if (!std::isfinite(sum.hi)) {
      throw NonConvergenceError("mittag_leffler: overflow");
    }
    bool const past_peak = argument > 2.0 && k * log_abs_z < ln_gamma(argument);
    if (past_peak && std::abs(magnitude) <= 1e-18 * std::abs(sum.hi)) {
      return sum.value();
    }
  }
  throw NonConvergenceError("mittag_leffler: no convergence within 1e5 terms");
}

}  // namespace fracorder::specfun
