#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "fracorder/analysis.hpp"
#include "fracorder/errors.hpp"
#include "fracorder/norms.hpp"
#include "oracles.hpp"

using namespace fracorder;

namespace {

Interval const unit(0.0, 1.0);

double exp_cf_l1(double beta, double b) {
  return beta / (1.0 - beta) * -std::expm1(-(1.0 - beta) / beta * b);
}

std::vector<TestFunction> catalog() {
  return {TestFunction::exponential(),       TestFunction::cosine(),
          TestFunction::affine(2, 1),        TestFunction::power(2),
          TestFunction::power(1.5),          TestFunction::abs_shift(0.5),
          TestFunction::step_antiderivative({{0.2, 0.4}, {0.6, 0.9}}, {1.0, -2.0})};
}

}  // namespace

TEST(NormKind, ParseAndPrint) {
  EXPECT_EQ(parse_norm_kind("1"), NormKind::L1);
  EXPECT_EQ(parse_norm_kind("inf"), NormKind::LInf);
  EXPECT_EQ(to_string(NormKind::L1), "1");
  EXPECT_EQ(to_string(NormKind::LInf), "inf");
  EXPECT_THROW(parse_norm_kind("2"), DomainError);
}

TEST(ErrorL1, RiemannLiouvilleOfOneIsPowerOverGamma) {
  auto const one = TestFunction::affine(0, 1);
  auto const r = error_l1(one, OperatorKind::RiemannLiouville, 0.5, unit);
  EXPECT_NEAR(r.value, 1.1283791670955126, 1e-8);  // 1 / Gamma(1.5)
  for (double b : {0.5, 2.0}) {
    for (double beta : {0.3, 0.8}) {
      double const expected = std::exp(beta * std::log(b) - oracle::ln_gamma(1.0 + beta));
      EXPECT_NEAR(error_l1(one, OperatorKind::RiemannLiouville, beta, Interval(0, b)).value,
                  expected, 1e-8)
          << "b = " << b << " beta = " << beta;
    }
  }
}

TEST(ErrorL1, ExponentialCaputoFabrizioMatchesClosedForm) {
  auto const r = error_l1(TestFunction::exponential(), OperatorKind::CaputoFabrizio, 0.25, unit);
  EXPECT_NEAR(r.value, 0.31673764387737868567, 1e-8);
  EXPECT_EQ(r.kind, OperatorKind::CaputoFabrizio);
  EXPECT_EQ(r.p, NormKind::L1);
  EXPECT_EQ(r.beta, 0.25);
  EXPECT_EQ(r.interval, unit);
  EXPECT_GT(r.n_eval_points, 0u);
  for (double beta : {0.5, 1e-2, 1e-4}) {
    EXPECT_NEAR(error_l1(TestFunction::exponential(), OperatorKind::CaputoFabrizio, beta,
                         Interval(0, 2))
                    .value,
                exp_cf_l1(beta, 2.0), 1e-8)
        << "beta = " << beta;
  }
}

TEST(ErrorL1, ConstantFunctionsHaveNoCaputoOrCaputoFabrizioError) {
  for (double c : {0.0, 1.0, -3.5}) {
    auto const f = TestFunction::affine(0, c);
    for (auto kind : {OperatorKind::Caputo, OperatorKind::CaputoFabrizio}) {
      for (auto p : {NormKind::L1, NormKind::LInf}) {
        EXPECT_EQ(error_norm(f, kind, p, 0.3, unit).value, 0.0);
      }
    }
  }
}

TEST(ErrorL1, RiemannLiouvilleDoesNotVanish) {
  auto const one = TestFunction::affine(0, 1);
  for (double beta : {0.1, 0.01, 0.001}) {
    double const v = error_l1(one, OperatorKind::RiemannLiouville, beta, unit).value;
    EXPECT_GE(v, 0.9);
    EXPECT_NEAR(v, 1.0 / oracle::gamma(1.0 + beta), 1e-8);
  }
}

TEST(ErrorL1, AgreesWithIndependentQuadrature) {
  // |C f - f'| integrated by the graded Gauss-Legendre oracle, on an inner
  // grid of Caputo values from the oracle itself.
  auto const cosine = [](double s) { return -std::sin(s); };
  for (double beta : {0.2, 0.6}) {
    double const alpha = 1.0 - beta;
    std::vector<double> const none;
    double const expected = oracle::integrate(
        [&](double t) { return std::abs(oracle::caputo(cosine, alpha, 0.0, t) - cosine(t)); },
        0.0, 1.0, none, oracle::Grade::Low, 2);
    EXPECT_NEAR(error_l1(TestFunction::cosine(), OperatorKind::Caputo, beta, unit).value, expected,
                1e-8)
        << "beta = " << beta;
  }
}

TEST(ErrorL1, AbsShiftCaputoErrorIsOfOrderBeta) {
  double const beta = 1e-4;
  auto const r = error_l1(TestFunction::abs_shift(1), OperatorKind::Caputo, beta, Interval(0, 2));
  EXPECT_GE(r.value / beta, 1.5);
  EXPECT_LE(r.value / beta, 3.0);
}

TEST(ErrorL1, BudgetIsEnforced) {
  ErrorOptions options;
  options.max_evaluations = 100;
  options.tol = 1e-14;
  EXPECT_THROW(error_l1(TestFunction::cosine(), OperatorKind::Caputo, 0.01, unit, options),
               BudgetExceededError);
}

TEST(ErrorL1, RejectsBadOrders) {
  for (double beta : {0.0, 1.0, -0.1, std::nan("")}) {
    EXPECT_THROW(error_l1(TestFunction::cosine(), OperatorKind::Caputo, beta, unit), DomainError);
    EXPECT_THROW(error_linf(TestFunction::cosine(), OperatorKind::Caputo, beta, unit),
                 DomainError);
  }
}

TEST(ErrorLinf, IdentityUnderCaputoHasSupOne) {
  auto const f = TestFunction::affine(1, 0);
  for (double beta : {0.5, 0.1, 0.01}) {
    EXPECT_DOUBLE_EQ(error_linf(f, OperatorKind::Caputo, beta, unit).value, 1.0);
  }
}

TEST(ErrorLinf, IdentityUnderCaputoFabrizioHasSupOne) {
  auto const r = error_linf(TestFunction::affine(1, 0), OperatorKind::CaputoFabrizio, 0.25, unit);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(r.p, NormKind::LInf);
}

TEST(ErrorLinf, CaputoFabrizioIsNoBetterThanCaputoOnIdentity) {
  auto const f = TestFunction::affine(1, 0);
  for (double beta : {0.1, 0.01}) {
    EXPECT_GE(error_linf(f, OperatorKind::CaputoFabrizio, beta, unit).value,
              error_linf(f, OperatorKind::Caputo, beta, unit).value);
  }
}

TEST(ErrorLinf, SquareUnderCaputoMatchesInteriorMaximum) {
  // 2t - 2t^{1+beta}/Gamma(2+beta) peaks where t^beta = Gamma(1+beta).
  auto const f = TestFunction::power(2);
  for (double beta : {0.5, 0.1, 0.01, 1e-3}) {
    double const t_max = std::exp(oracle::ln_gamma(1.0 + beta) / beta);
    double const expected = 2.0 * beta / (1.0 + beta) * t_max;
    EXPECT_NEAR(error_linf(f, OperatorKind::Caputo, beta, unit).value, expected, 1e-10)
        << "beta = " << beta;
  }
}

TEST(ErrorLinf, RiemannLiouvilleBlowsUpWhenStartValueIsNonzero) {
  auto const r =
      error_linf(TestFunction::affine(1, 1), OperatorKind::RiemannLiouville, 0.5, unit);
  EXPECT_TRUE(std::isinf(r.value));
}

TEST(ErrorLinf, CoversBothSidesOfKinks) {
  // C of |t - 1| on (0, 2): the error jumps at the kink; the left limit of f'
  // is -1 while the operator is continuous, so the sup is at least the jump
  // half-width minus the operator value there.
  auto const g = TestFunction::abs_shift(1);
  double const beta = 0.01;
  double const sup = error_linf(g, OperatorKind::Caputo, beta, Interval(0, 2)).value;
  FractionalOrder const order = FractionalOrder::from_beta(beta);
  double const at_kink = *closed_form_fractional(g, OperatorKind::Caputo, order, 0, 1);
  EXPECT_GE(sup, std::max(std::abs(at_kink + 1.0), std::abs(at_kink - 1.0)) - 1e-12);
}

TEST(ErrorNorms, OneNormIsBoundedBySupNorm) {
  Interval const span(0.0, 1.0);
  ErrorOptions options;
  options.n_grid = 2001;
  for (auto const& f : catalog()) {
    for (auto kind : {OperatorKind::Caputo, OperatorKind::CaputoFabrizio}) {
      for (double beta : {0.5, 0.05}) {
        double const l1 = error_l1(f, kind, beta, span, options).value;
        double const linf = error_linf(f, kind, beta, span, options).value;
        EXPECT_LE(l1, span.length() * linf + options.tol)
            << f.id() << " " << to_string(kind) << " beta = " << beta;
        EXPECT_GE(l1, 0.0);
      }
    }
  }
}

TEST(ErrorNorms, CaputoFabrizioOneNormOfPowerMatchesExactNumerator) {
  for (int m : {2, 3, 4}) {
    for (double T : {1.0, static_cast<double>(m - 1)}) {
      for (double beta : {0.3, 0.01}) {
        EXPECT_NEAR(error_l1(TestFunction::power(m), OperatorKind::CaputoFabrizio, beta,
                             Interval(0, T))
                        .value,
                    cf_error_l1_power(m, T, beta), 1e-7)
            << "m = " << m << " T = " << T << " beta = " << beta;
      }
    }
  }
}

TEST(ErrorSweep, ReproducesRiemannLiouvilleExample) {
  std::vector<double> const betas{0.1, 0.01};
  auto const reports = error_sweep(TestFunction::affine(0, 1), OperatorKind::RiemannLiouville,
                                   NormKind::L1, betas, unit);
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_NEAR(reports[0].value, 1.0511370061117778, 1e-8);  // 1 / Gamma(1.1)
  EXPECT_NEAR(reports[1].value, 1.0057065285003851, 1e-8);  // 1 / Gamma(1.01)
  EXPECT_EQ(reports[0].beta, 0.1);
  EXPECT_EQ(reports[1].beta, 0.01);
}

TEST(ErrorSweep, ReproducesExponentialCaputoFabrizioExample) {
  std::vector<double> const betas{0.2, 0.1, 0.05};
  auto const reports = error_sweep(TestFunction::exponential(), OperatorKind::CaputoFabrizio,
                                   NormKind::L1, betas, unit, {}, 3);
  ASSERT_EQ(reports.size(), betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    EXPECT_EQ(reports[i].beta, betas[i]);
    EXPECT_NEAR(reports[i].value, exp_cf_l1(betas[i], 1.0), 1e-8);
  }
}

TEST(ErrorSweep, ConstantUnderCaputoIsAllZero) {
  auto const betas = geometric_betas(0.1, 1e-3, 3);
  for (auto const& r : error_sweep(TestFunction::affine(0, 2), OperatorKind::Caputo,
                                   NormKind::L1, betas, unit)) {
    EXPECT_EQ(r.value, 0.0);
  }
}

TEST(ErrorSweep, OutputDoesNotDependOnThreadCount) {
  auto const betas = geometric_betas(0.5, 1e-3, 4);
  auto const f = TestFunction::abs_shift(0.5);
  for (auto p : {NormKind::L1, NormKind::LInf}) {
    auto const serial = error_sweep(f, OperatorKind::Caputo, p, betas, unit, {}, 1);
    auto const parallel = error_sweep(f, OperatorKind::Caputo, p, betas, unit, {}, 4);
    auto const automatic = error_sweep(f, OperatorKind::Caputo, p, betas, unit, {}, 0);
    ASSERT_EQ(serial.size(), betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
      EXPECT_EQ(serial[i].beta, betas[i]);
      EXPECT_EQ(serial[i].value, parallel[i].value);
      EXPECT_EQ(serial[i].value, automatic[i].value);
      EXPECT_EQ(serial[i].n_eval_points, parallel[i].n_eval_points);
    }
  }
}

TEST(ErrorSweep, RejectsBadBetaLists) {
  auto const f = TestFunction::cosine();
  std::vector<double> const empty;
  std::vector<double> const increasing{0.1, 0.2};
  std::vector<double> const repeated{0.1, 0.1};
  for (auto const* betas : {&empty, &increasing, &repeated}) {
    EXPECT_THROW(error_sweep(f, OperatorKind::Caputo, NormKind::L1, *betas, unit), DomainError);
  }
}

TEST(ErrorSweep, AttachesOffendingBetaToErrors) {
  ErrorOptions options;
  options.max_evaluations = 100;
  options.tol = 1e-14;
  std::vector<double> const betas{0.5, 0.25};
  try {
    error_sweep(TestFunction::cosine(), OperatorKind::Caputo, NormKind::L1, betas, unit, options,
                2);
    FAIL() << "expected BudgetExceededError";
  } catch (BudgetExceededError const& e) {
    EXPECT_NE(std::string(e.what()).find("beta = 0.5"), std::string::npos) << e.what();
  }
}
