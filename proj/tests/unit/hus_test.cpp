#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcayley/errors.hpp"
#include "qcayley/hus.hpp"

namespace qcayley {
namespace {

using testing::Case;
using testing::LComplex;

Complex to_c(const ScaledComplex& z) { return z.to_float().value; }

TEST(TailSumTest, UnitCoefficient) {
  const TailSum psi = tail_sum_psi(CayleyParams(2.0, 0.0, {1, 0}), 0);
  EXPECT_LT(std::abs(to_c(psi.value) - 1.0), 1e-14);
  EXPECT_GT(psi.truncation.terms_used, 3);
  EXPECT_LE(psi.truncation.tail_bound, kTailTolerance);
}

TEST(TailSumTest, ImaginaryCoefficient) {
  const CayleyParams params(1.5, 0.3, {0, 2});
  for (std::int64_t k = 0; k <= 20; ++k) {
    EXPECT_LT(std::abs(to_c(tail_sum_psi(params, k).value) - Complex(0, -0.5)), 0.5e-9) << k;
  }
}

TEST(TailSumTest, ForbiddenExampleIsRejected) {
  EXPECT_THROW(tail_sum_psi(CayleyParams(2.0, 0.25, {1, 0}), 0), ForbiddenCoefficientError);
}

TEST(TailSumTest, AgreesWithSixtyTermOracle) {
  const Case c{2.0, 0.25, {0.9, 0}};
  const LComplex ref = testing::weighted_tail(c, 0, [](std::int64_t) { return LComplex(1); }, 60);
  const TailSum psi = tail_sum_psi(CayleyParams(c.q, c.eta, c.w), 0);
  EXPECT_LT(testing::rel_diff(psi.value, ref), 1e-12L);
  EXPECT_LT(std::abs(ref - 1.0L / 0.9L), 1e-15L);
}

TEST(TailSumTest, IdentityOnRandomGrid) {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 100; ++i) {
    const Case c = testing::draw_case(rng);
    const CayleyParams params(c.q, c.eta, c.w);
    const ScaledComplex w = ScaledComplex::from_complex(c.w);
    ScaledComplex first;
    for (std::int64_t k = 0; k <= 20; ++k) {
      const TailSum psi = tail_sum_psi(params, k);
      const double err = (w * psi.value - ScaledComplex::one()).abs().to_double();
      ASSERT_LT(err, 1e-9) << c.q << ' ' << c.eta << ' ' << c.w << " k=" << k;
      if (k == 0) first = psi.value;
      ASSERT_LT(relative_difference(psi.value, first), 1e-9);
    }
  }
}

TEST(TailSumTest, MatchesOracleWhenWellConditioned) {
  std::mt19937_64 rng(321);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const Case c = testing::draw_case(rng);
    const TailSum psi = tail_sum_psi(CayleyParams(c.q, c.eta, c.w), 3);
    if (psi.condition > 1e3) continue;
    const LComplex ref = testing::weighted_tail(c, 3, [](std::int64_t) { return LComplex(1); }, 4000);
    ASSERT_LT(testing::rel_diff(psi.value, ref), 1e-13L * psi.condition) << c.w;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(TailSumTest, EscalatesIllConditionedSums) {
  // q near 1 with Re w < 0: P dips by many orders before it grows.
  const CayleyParams params(1.1115, 0.302197, {-5.18697, -0.0075});
  const TailSum psi = tail_sum_psi(params, 0);
  EXPECT_GT(psi.condition, 1e6);
  EXPECT_GT(psi.precision_bits, 53);
  const double err = (ScaledComplex::from_complex(params.w()) * psi.value - ScaledComplex::one())
                         .abs()
                         .to_double();
  EXPECT_LT(err, 1e-12);
}

TEST(TailSumTest, NotApplicable) {
  EXPECT_THROW(tail_sum_psi(CayleyParams(2.0, 0.1, {}), 0), NotApplicableError);
  EXPECT_THROW(tail_sum_psi(CayleyParams(2.0, 0.5, {1, 1}), 0), NotApplicableError);
  EXPECT_THROW(tail_sum_psi(CayleyParams(2.0, 0.1, {1, 1}), -1), ParameterError);
}

TEST(RatioProfileTest, Limits) {
  struct Row {
    double eta;
    Complex w;
    double limit;
  };
  for (const Row& r : {Row{0.0, {1, 0}, 0.0}, Row{0.25, {0.9, 0}, 1.0 / 3.0},
                       Row{0.4, {1.3, -0.4}, 2.0 / 3.0}}) {
    const std::vector<double> prof = term_ratio_profile(CayleyParams(2.0, r.eta, r.w), LatticeWindow(2.0, 120));
    ASSERT_EQ(prof.size(), 120u);
    const auto burn = ratio_burn_in(prof, r.limit, 1e-6);
    ASSERT_TRUE(burn.has_value()) << r.eta;
    EXPECT_LE(*burn, 60) << r.eta;
    for (std::size_t m = static_cast<std::size_t>(*burn); m < prof.size(); ++m) {
      EXPECT_LT(std::abs(prof[m] - r.limit), 1e-6);
    }
  }
}

TEST(RatioProfileTest, MatchesOracleRatios) {
  const Case c{1.7, 0.15, {-0.6, 2.2}};
  const std::vector<double> prof = term_ratio_profile(CayleyParams(c.q, c.eta, c.w), LatticeWindow(c.q, 40));
  for (std::int64_t m = 0; m < 40; ++m) {
    const long double ref = std::abs(static_cast<long double>(c.q) * testing::den(c, m) / testing::num(c, m + 1));
    EXPECT_NEAR(prof[static_cast<std::size_t>(m)], static_cast<double>(ref), 1e-14 * static_cast<double>(ref) + 1e-300);
  }
}

TEST(RatioProfileTest, BurnInHelper) {
  EXPECT_EQ(ratio_burn_in({5, 1, 0.5, 0.5}, 0.5, 1e-6), 2);
  EXPECT_EQ(ratio_burn_in({5, 1, 0.5, 0.7}, 0.5, 1e-6), std::nullopt);
  EXPECT_EQ(ratio_burn_in({}, 0.5, 1e-6), std::nullopt);
}

TEST(ShadowTest, HomogeneousBundle) {
  const CayleyParams params(2.0, 0.2, {0.5, 0.5});
  const SolutionBundle b = synthesize(params, LatticeWindow(2.0, 20), PerturbationSpec::custom(0.1, {}), {2, -1});
  EXPECT_LT(std::abs(to_c(extract_shadow(params, b).x0) - Complex(2, -1)), 1e-15);
}

TEST(ShadowTest, ConstantWitnessHasZeroShadow) {
  const double eps = 0.1;
  const Complex w(0.8, -1.7);
  const CayleyParams params(2.3, 0.1, w);
  const SolutionBundle b =
      synthesize(params, LatticeWindow(2.3, 20), PerturbationSpec::constant(eps, {-eps, 0}), eps / w);
  EXPECT_LT(extract_shadow(params, b).x0.abs().to_double(), 1e-14);
}

TEST(ShadowTest, RandomPhaseMatchesLongSummation) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 40; ++i) {
    const Case c = testing::draw_case(rng);
    const CayleyParams params(c.q, c.eta, c.w);
    const PerturbationSpec spec = PerturbationSpec::random_phase(0.1, 1000 + static_cast<std::uint64_t>(i));
    const Complex c0(0.3, -0.2);
    const SolutionBundle b = synthesize(params, LatticeWindow(c.q, 30), spec, c0);
    const ShadowEstimate x0 = extract_shadow(params, b);
    ForcingSequence E(params, spec);
    const LComplex tail = testing::weighted_tail(
        c, 0, [&E](std::int64_t m) { const Complex z = E(m); return LComplex(z.real(), z.imag()); }, 10000);
    const LComplex ref = LComplex(c0.real(), c0.imag()) + tail;
    ASSERT_LT(testing::rel_diff(x0.x0, ref) * std::abs(ref), 1e-9L * std::max(1.0L, std::abs(ref)))
        << c.q << ' ' << c.eta << ' ' << c.w;
  }
}

TEST(CertifyTest, ConstantWitnessIsSharp) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const Case c = testing::draw_case(rng);
    const double eps = 0.1;
    const CayleyParams params(c.q, c.eta, c.w);
    const SolutionBundle b = synthesize_anchored(
        params, LatticeWindow(c.q, 64), PerturbationSpec::constant(eps, {-eps, 0}), {});
    const HusReport r = certify(params, b, eps);
    EXPECT_LT(r.x0.abs().to_double(), 1e-12 * r.bound);
    EXPECT_NEAR(r.sup_deviation / r.bound, 1.0, 1e-12);
    EXPECT_EQ(r.verdict, Verdict::kBoundHolds);
  }
}

TEST(CertifyTest, HomogeneousBundleHasNoDeviation) {
  const CayleyParams params(1.6, 0.3, {-1.1, 0.4});
  const SolutionBundle b =
      synthesize(params, LatticeWindow(1.6, 40), PerturbationSpec::custom(0.1, {}), {1, 1});
  const HusReport r = certify(params, b, 0.1);
  EXPECT_EQ(r.sup_deviation, 0.0);
  EXPECT_EQ(r.verdict, Verdict::kBoundHolds);
}

TEST(CertifyTest, BoundHoldsForRealPositiveCoefficientAtEtaZero) {
  // All series terms are positive here, so |sum E term| <= eps sum term = eps / w.
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double q = 3.0 - 2.0 * u(rng);
    const double w = 0.1 + 9.9 * u(rng);
    const CayleyParams params(q, 0.0, {w, 0});
    const SolutionBundle b = synthesize(params, LatticeWindow(q, 128),
                                        PerturbationSpec::random_phase(0.1, static_cast<std::uint64_t>(i)), {});
    const HusReport r = certify(params, b, 0.1);
    ASSERT_EQ(r.verdict, Verdict::kBoundHolds) << q << ' ' << w;
    ASSERT_LE(r.sup_deviation, r.bound * (1 + kBoundSlack));
  }
}

TEST(CertifyTest, DeviationMatchesOracleAndMajorant) {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 100; ++i) {
    const Case c = testing::draw_case(rng);
    const CayleyParams params(c.q, c.eta, c.w);
    const PerturbationSpec spec = PerturbationSpec::random_phase(0.1, static_cast<std::uint64_t>(i));
    const SolutionBundle b = synthesize(params, LatticeWindow(c.q, 16), spec, {});
    const HusReport r = certify(params, b, 0.1);
    ForcingSequence E(params, spec);
    auto e = [&E](std::int64_t m) { const Complex z = E(m); return LComplex(z.real(), z.imag()); };
    long double sup = 0.0L;
    long double major = 0.0L;
    for (std::int64_t k = 0; k <= 16; ++k) {
      sup = std::max(sup, std::abs(testing::weighted_tail(c, k, e, 2500)));
      major = std::max(major, 0.1L * testing::weighted_tail_abs(c, k, 2500));
    }
    const long double tol = 1e-12L * std::max<long double>(1.0L, r.condition) * major;
    ASSERT_LT(std::abs(r.sup_deviation - sup), tol + 1e-300L) << c.q << ' ' << c.eta << ' ' << c.w;
    ASSERT_LT(std::abs(r.majorant_bound - major), 1e-9L * major);
    ASSERT_LE(r.sup_deviation, r.majorant_bound * (1 + kBoundSlack));
    ASSERT_LT(r.identity_error, 1e-9);
  }
}

TEST(CertifyTest, StatedConstantIsExceededBySignAlignedForcing) {
  // E_m = eps sign(term_m) makes every term of the tail at k = 0 positive, so
  // the deviation there is eps sum |term_m| > eps / |w|.
  const Case c{2.0, 0.25, {0.9, 0}};
  const CayleyParams params(c.q, c.eta, c.w);
  std::vector<Complex> table;
  LComplex tau = (c.q - 1.0L) / testing::num(c, 0);
  for (std::int64_t m = 0; m < 200; ++m) {
    table.push_back({tau.real() >= 0 ? 1.0 : -1.0, 0.0});
    tau *= static_cast<long double>(c.q) * testing::den(c, m) / testing::num(c, m + 1);
  }
  const SolutionBundle b = synthesize(params, LatticeWindow(c.q, 20), PerturbationSpec::custom(1.0, table), {});
  const HusReport r = certify(params, b, 1.0);
  auto e = [&table](std::int64_t m) {
    return m < static_cast<std::int64_t>(table.size()) ? LComplex(table[static_cast<std::size_t>(m)].real()) : LComplex(0);
  };
  const long double at_zero = std::abs(testing::weighted_tail(c, 0, e, 400));
  EXPECT_NEAR(static_cast<double>(at_zero), static_cast<double>(testing::weighted_tail_abs(c, 0, 200)), 1e-15);
  EXPECT_NEAR(static_cast<double>(at_zero), 1.11217, 1e-5);
  long double sup = 0.0L;
  for (std::int64_t k = 0; k <= 20; ++k) sup = std::max(sup, std::abs(testing::weighted_tail(c, k, e, 400)));
  EXPECT_NEAR(r.sup_deviation, static_cast<double>(sup), 1e-12 * static_cast<double>(sup));
  EXPECT_GT(static_cast<double>(at_zero), r.bound * 1.0009);
  EXPECT_EQ(r.verdict, Verdict::kBoundViolated);
  EXPECT_LE(r.sup_deviation, r.majorant_bound * (1 + kBoundSlack));
}

TEST(CertifyTest, NotApplicableRegimes) {
  const LatticeWindow win(2.0, 10);
  const CayleyParams zero(2.0, 0.2, {});
  const HusReport r0 = certify(zero, synthesize(zero, win, PerturbationSpec::constant(0.1, {0.1, 0}), {}), 0.1);
  EXPECT_EQ(r0.verdict, Verdict::kNotApplicable);
  EXPECT_TRUE(std::isinf(r0.bound));
  const CayleyParams half(2.0, 0.5, {0, 10});
  const HusReport rh = certify(half, synthesize(half, win, PerturbationSpec::unit_phase_of_p(0.1), {}), 0.1);
  EXPECT_EQ(rh.verdict, Verdict::kNotApplicable);
}

TEST(CertifyTest, ResidualPremiseIsChecked) {
  const CayleyParams params(2.0, 0.2, {1, 1});
  const SolutionBundle b = synthesize(params, LatticeWindow(2.0, 10), PerturbationSpec::random_phase(0.2, 1), {});
  EXPECT_THROW(certify(params, b, 0.1), InputError);
  EXPECT_NO_THROW(certify(params, b, 0.2));
}

TEST(CertifyTest, BoundIsEpsilonOverModulus) {
  const CayleyParams params(2.0, 0.1, {3, 4});
  const SolutionBundle b = synthesize(params, LatticeWindow(2.0, 10), PerturbationSpec::random_phase(0.5, 1), {});
  EXPECT_EQ(certify(params, b, 0.5).bound, 0.5 / 5.0);
}

TEST(UniquenessTest, ShiftedCandidateFailsQuickly) {
  const CayleyParams params(2.0, 0.0, {1, 0});
  const SolutionBundle b = synthesize(params, LatticeWindow(2.0, 30), PerturbationSpec::random_phase(0.1, 3), {});
  const UniquenessEvidence u = uniqueness_probe(params, b, 0.1, {1, 0});
  ASSERT_TRUE(u.violation_index.has_value());
  EXPECT_LE(*u.violation_index, 1);
  EXPECT_GT(u.deviation_at_violation, u.threshold);
  EXPECT_DOUBLE_EQ(u.threshold, 0.2);
}

TEST(UniquenessTest, ViolationIndexNonIncreasingInShift) {
  const CayleyParams params(1.3, 0.2, {0.4, -0.3});
  const SolutionBundle b = synthesize(params, LatticeWindow(1.3, 200), PerturbationSpec::random_phase(0.1, 3), {});
  std::int64_t prev = std::numeric_limits<std::int64_t>::max();
  for (double d : {1e-6, 1e-4, 1e-2, 1.0, 100.0}) {
    const UniquenessEvidence u = uniqueness_probe(params, b, 0.1, {d, 0});
    ASSERT_TRUE(u.violation_index.has_value()) << d;
    EXPECT_LE(*u.violation_index, prev);
    prev = *u.violation_index;
  }
}

TEST(UniquenessTest, ZeroShiftRejected) {
  const CayleyParams params(2.0, 0.0, {1, 0});
  const SolutionBundle b = synthesize(params, LatticeWindow(2.0, 5), PerturbationSpec::custom(0.1, {}), {});
  EXPECT_THROW(uniqueness_probe(params, b, 0.1, {}), ParameterError);
}

TEST(MajorantTest, Ratio) {
  EXPECT_DOUBLE_EQ(majorant_ratio(0.0), 0.5);
  EXPECT_DOUBLE_EQ(majorant_ratio(0.25), 2.0 / 3.0);
}

}  // namespace
}  // namespace qcayley
