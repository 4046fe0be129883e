#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcayley/cayley.hpp"
#include "qcayley/errors.hpp"
#include "qcayley/solutions.hpp"

namespace qcayley {
namespace {

Trajectory from_values(double q, const std::vector<Complex>& xs) {
  std::vector<ScaledComplex> v;
  for (Complex x : xs) v.push_back(ScaledComplex::from_complex(x));
  return Trajectory(LatticeWindow(q, static_cast<std::int64_t>(xs.size()) - 1), std::move(v));
}

Complex to_c(const ScaledComplex& z) { return z.to_float().value; }

TEST(ValidateTest, NumeratorBranchAtOrigin) {
  const Validity v = validate(2.0, 0.0, {-1.0, 0.0});
  EXPECT_EQ(v.kind, Validity::Kind::kForbidden);
  EXPECT_EQ(v.k, 0);
  EXPECT_EQ(v.branch, ForbiddenBranch::kNumerator);
}

TEST(ValidateTest, DenominatorBranch) {
  const Validity v = validate(2.0, 0.25, {1.0, 0.0});
  EXPECT_EQ(v.kind, Validity::Kind::kForbidden);
  EXPECT_EQ(v.k, 2);
  EXPECT_EQ(v.branch, ForbiddenBranch::kDenominator);
  const Validity v1 = validate(2.0, 0.25, {2.0, 0.0});
  EXPECT_EQ(v1.kind, Validity::Kind::kForbidden);
  EXPECT_EQ(v1.k, 1);
  EXPECT_EQ(v1.branch, ForbiddenBranch::kDenominator);
}

TEST(ValidateTest, ComplexCoefficientIsValid) {
  EXPECT_EQ(validate(2.0, 0.3, {1.0, 1.0}).kind, Validity::Kind::kValid);
}

TEST(ValidateTest, MatchesBruteForceScan) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> kk(0, 30);
  for (int i = 0; i < 2000; ++i) {
    const double q = 1.0 + 2.0 * u(rng);
    const double eta = 0.5 * u(rng);
    const int k = kk(rng);
    const double qk = std::pow(q, k);
    Complex w;
    switch (i % 3) {
      case 0: w = -1.0 / ((1.0 - eta) * (q - 1.0) * qk); break;
      case 1: w = eta > 0 ? 1.0 / (eta * (q - 1.0) * qk) : 0.5; break;
      default: w = std::polar(10.0 * u(rng), 6.28 * u(rng)); break;
    }
    bool forbidden = false;
    for (int m = 0; m <= 200; ++m) {
      const double s = (q - 1.0) * std::pow(q, m);
      const Complex a = -1.0 / ((1.0 - eta) * s);
      if (std::abs(w - a) <= 1e-12 * std::abs(a)) forbidden = true;
      if (eta > 0) {
        const Complex b = 1.0 / (eta * s);
        if (std::abs(w - b) <= 1e-12 * std::abs(b)) forbidden = true;
      }
    }
    const Validity v = validate(q, eta, w);
    ASSERT_EQ(v.kind == Validity::Kind::kForbidden, forbidden) << q << ' ' << eta << ' ' << w;
    ASSERT_EQ(validate(q, eta, std::conj(w)).kind, v.kind);
  }
}

TEST(ValidateTest, NearSingularWarning) {
  const Validity v = validate(2.0, 0.0, {-1.0 * (1 + 1e-8), 0.0});
  EXPECT_EQ(v.kind, Validity::Kind::kNearSingular);
  EXPECT_TRUE(v.usable());
  EXPECT_NEAR(v.relative_distance, 1e-8, 1e-12);
}

TEST(ValidateTest, ZeroCoefficientIsValid) {
  EXPECT_EQ(validate(2.0, 0.5, {}).kind, Validity::Kind::kValid);
}

TEST(ValidateTest, RangeErrors) {
  EXPECT_THROW(validate(1.0, 0.1, {1, 0}), ParameterError);
  EXPECT_THROW(validate(2.0, 0.6, {1, 0}), ParameterError);
  EXPECT_THROW(validate(2.0, -0.1, {1, 0}), ParameterError);
  EXPECT_THROW(validate(2.0, 0.1, {std::nan(""), 0}), ParameterError);
}

TEST(StepRatioTest, ZeroCoefficientGivesOne) {
  const CayleyParams p(2.0, 0.3, {});
  for (std::int64_t k = 0; k < 50; ++k) {
    EXPECT_EQ(to_c(step_ratio(p, point(2.0, k))), Complex(1, 0));
  }
}

TEST(StepRatioTest, HandValue) {
  EXPECT_EQ(to_c(step_ratio(CayleyParams(2.0, 0.0, {1, 0}), point(2.0, 0))), Complex(2, 0));
}

TEST(StepRatioTest, HalfTendsToMinusOne) {
  const CayleyParams p(2.0, 0.5, {0, 10});
  EXPECT_LT(std::abs(to_c(step_ratio(p, point(2.0, 40))) + 1.0), 1e-6);
  EXPECT_LT(std::abs(to_c(step_ratio(p, point(2.0, 400))) + 1.0), 1e-15);
}

TEST(StepRatioTest, ForbiddenThrows) {
  const CayleyParams p(2.0, 0.0, {-1, 0});
  EXPECT_FALSE(p.validity().usable());
  EXPECT_THROW(step_ratio(p, point(2.0, 0)), ForbiddenCoefficientError);
  EXPECT_THROW(p.require_usable(), ForbiddenCoefficientError);
}

TEST(OperatorTest, JacksonDerivative) {
  const Trajectory c = Trajectory::constant(LatticeWindow(2.0, 5), ScaledComplex::from_real(7));
  for (std::int64_t k = 0; k < 5; ++k) EXPECT_TRUE(jackson_derivative(c, k).is_zero());
  const Trajectory lin = from_values(2.0, {1, 2, 4, 8});
  for (std::int64_t k = 0; k < 3; ++k) EXPECT_EQ(to_c(jackson_derivative(lin, k)), Complex(1, 0));
  const Trajectory sq = from_values(3.0, {1, 9});
  EXPECT_EQ(to_c(jackson_derivative(sq, 0)), Complex(4, 0));
  EXPECT_THROW(jackson_derivative(sq, 1), ParameterError);
}

TEST(OperatorTest, CayleyAverage) {
  const Trajectory t = from_values(2.0, {2, 4});
  EXPECT_EQ(to_c(cayley_average(t, 0.0, 0)), Complex(2, 0));
  EXPECT_EQ(to_c(cayley_average(t, 0.5, 0)), Complex(3, 0));
  const Trajectory c = Trajectory::constant(LatticeWindow(2.0, 1), ScaledComplex::from_complex({1, -2}));
  EXPECT_LT(std::abs(to_c(cayley_average(c, 0.37, 0)) - Complex(1, -2)), 1e-15);
  EXPECT_THROW(cayley_average(t, 0.5, 1), ParameterError);
}

TEST(ResidualTest, ProductSolutionHasZeroResidual) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const testing::Case c = testing::draw_case(rng);
    const CayleyParams params(c.q, c.eta, c.w);
    const Trajectory P = product_solution(params, LatticeWindow(c.q, 60));
    const Trajectory zero = Trajectory::constant(LatticeWindow(c.q, 59), ScaledComplex::zero());
    ASSERT_LT(residual_mismatch(params, P, zero), 1e-10) << c.q << ' ' << c.eta << ' ' << c.w;
  }
}

TEST(ResidualTest, ConstantWitnessGivesMinusEpsilon) {
  const double eps = 0.1;
  const Complex w(1.5, -0.5);
  const CayleyParams params(1.7, 0.2, w);
  const Trajectory phi = Trajectory::constant(LatticeWindow(1.7, 40), ScaledComplex::from_complex(eps / w));
  const Trajectory res = residual(params, phi);
  ASSERT_EQ(res.size(), 40u);
  for (std::int64_t k = 0; k < 40; ++k) {
    EXPECT_LT(std::abs(to_c(res[k]) + eps), 1e-14) << k;
  }
}

TEST(ResidualTest, IsLinear) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  const CayleyParams params(2.2, 0.35, {0.7, 2.1});
  const LatticeWindow win(2.2, 30);
  std::vector<ScaledComplex> x1, x2;
  for (std::size_t i = 0; i < win.size(); ++i) {
    x1.push_back(ScaledComplex::from_complex({u(rng), u(rng)}));
    x2.push_back(ScaledComplex::from_complex({u(rng), u(rng)}));
  }
  const Complex a(u(rng), u(rng));
  const Complex b(u(rng), u(rng));
  std::vector<ScaledComplex> mix;
  for (std::size_t i = 0; i < win.size(); ++i) mix.push_back(x1[i] * a + x2[i] * b);
  const Trajectory t1(win, x1), t2(win, x2), tm(win, mix);
  const Trajectory r1 = residual(params, t1), r2 = residual(params, t2), rm = residual(params, tm);
  const std::vector<ScaledReal> scale = residual_scale(params, tm);
  for (std::int64_t k = 0; k < 30; ++k) {
    const ScaledComplex expect = r1[k] * a + r2[k] * b;
    const double err = (rm[k] - expect).abs().to_double();
    EXPECT_LT(err, 1e-12 * std::max(expect.abs().to_double(), scale[static_cast<std::size_t>(k)].to_double()));
  }
}

TEST(ResidualTest, NeedsTwoValues) {
  const CayleyParams params(2.0, 0.0, {1, 0});
  EXPECT_THROW(residual(params, Trajectory::constant(LatticeWindow(2.0, 0), ScaledComplex::one())),
               ParameterError);
}

TEST(TrajectoryTest, SizeMismatchThrows) {
  EXPECT_THROW(Trajectory(LatticeWindow(2.0, 3), std::vector<ScaledComplex>(3)), ParameterError);
}

}  // namespace
}  // namespace qcayley
