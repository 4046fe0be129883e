#include <gtest/gtest.h>

#include <cmath>

#include "qcayley/errors.hpp"
#include "qcayley/lattice.hpp"

namespace qcayley {
namespace {

TEST(LatticeTest, PointAtOrigin) {
  const LatticePoint p = point(2.0, 0);
  EXPECT_EQ(p.k, 0);
  EXPECT_EQ(p.t.to_double(), 1.0);
}

TEST(LatticeTest, ExactPowerOfTwo) {
  EXPECT_EQ(point(2.0, 10).t.to_double(), 1024.0);
}

TEST(LatticeTest, LargePowerMatchesRepeatedMultiplication) {
  long double t = 1.0L;
  for (int i = 0; i < 100; ++i) t *= 1.5L;
  const double got = point(1.5, 100).t.to_double();
  EXPECT_LT(std::abs(got - t) / t, 1e-12L);
  EXPECT_NEAR(got, 4.0656e17, 1e13);
}

TEST(LatticeTest, HugeIndexStaysFinite) {
  const ScaledReal t = point(3.0, 100000).t;
  EXPECT_NEAR(t.log2(), 100000 * std::log2(3.0), 1e-6);
}

TEST(LatticeTest, RejectsBadArguments) {
  EXPECT_THROW(point(1.0, 3), ParameterError);
  EXPECT_THROW(point(0.5, 3), ParameterError);
  EXPECT_THROW(point(2.0, -1), ParameterError);
  EXPECT_THROW(LatticeWindow(1.0, 4), ParameterError);
  EXPECT_THROW(LatticeWindow(2.0, -1), ParameterError);
  EXPECT_THROW(LatticeWindow(std::nan(""), 4), ParameterError);
}

TEST(LatticeTest, IterateSmallWindow) {
  const std::vector<LatticePoint> pts = iterate(LatticeWindow(2.0, 3));
  ASSERT_EQ(pts.size(), 4u);
  const double expected[] = {1, 2, 4, 8};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(pts[i].k, static_cast<std::int64_t>(i));
    EXPECT_EQ(pts[i].t.to_double(), expected[i]);
  }
}

TEST(LatticeTest, IterateSinglePoint) {
  const std::vector<LatticePoint> pts = iterate(LatticeWindow(3.0, 0));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].t.to_double(), 1.0);
}

TEST(LatticeTest, IterateLastPoint) {
  const std::vector<LatticePoint> pts = iterate(LatticeWindow(1.8, 5));
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_NEAR(pts.back().t.to_double(), std::pow(1.8, 5), 1e-12 * std::pow(1.8, 5));
}

TEST(LatticeTest, SuccessorIsQTimesT) {
  for (double q : {1.0001, 1.37, 2.0, 2.9}) {
    const std::vector<LatticePoint> pts = iterate(LatticeWindow(q, 2000));
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const ScaledReal ratio = pts[i].t / pts[i - 1].t;
      ASSERT_NEAR(ratio.to_double(), q, 4e-13 * q) << "q = " << q << " k = " << i;
      ASSERT_GT(pts[i].t, pts[i - 1].t);
    }
  }
}

TEST(LatticeTest, DefaultWindow) {
  const LatticeWindow w(2.0);
  EXPECT_EQ(w.k_max(), kDefaultKMax);
  EXPECT_EQ(w.size(), 257u);
}

}  // namespace
}  // namespace qcayley
