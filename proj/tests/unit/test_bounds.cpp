#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gsp/bounds.hpp"
#include "gsp/errors.hpp"

using namespace gsp;

TEST(Lambda, MeanOfConsecutiveRatios) {
  std::vector<double> a{1, 0.57, 0.47, 0.19};
  EXPECT_NEAR(lambda(a), (0.57 + 0.47 / 0.57 + 0.19 / 0.47) / 3, 1e-12);
  EXPECT_NEAR(lambda(a), 0.5996, 1e-4);
  EXPECT_EQ(lambda(std::vector<Rational>{Rational(1), Rational(1, 2)}), Rational(1, 2));
}

TEST(Lambda, DomainErrors) {
  EXPECT_THROW(lambda(std::vector<double>{1}), DomainError);
  EXPECT_THROW(lambda(std::vector<double>{1, 0, 0}), DomainError);
  EXPECT_THROW(lambda(std::vector<double>{1, 1.5}), DomainError);
  EXPECT_NO_THROW(lambda(std::vector<double>{1, 0.5, 0}));
  EXPECT_THROW(ratio_formula(std::vector<double>{1, 0.5}), DomainError);
  EXPECT_THROW(poa_bounds(2, 0.5), DomainError);
  EXPECT_THROW(poa_bounds(4, 0.0), DomainError);
  EXPECT_THROW(poa_bounds(4, 1.5), DomainError);
}

TEST(RatioFormula, KnownValues) {
  EXPECT_NEAR(ratio_formula(std::vector<double>{1, 0.5508, 0.4705}), 1.2591, 1e-4);
  std::vector<double> geo{1};
  for (int i = 1; i < 5; ++i) geo.push_back(geo.back() * 0.9375);
  EXPECT_NEAR(ratio_formula(geo), 1.1460, 1e-4);
  auto b = poa_bounds(5, 0.9375);
  EXPECT_DOUBLE_EQ(b.bound_a, 1.25);
  EXPECT_DOUBLE_EQ(b.bound_b, 1.25);
  EXPECT_DOUBLE_EQ(b.min_bound, 1.25);
}

TEST(RatioFormula, ExactAgreesWithDouble) {
  std::vector<Rational> a{Rational(1), Rational(3, 5), Rational(1, 2), Rational(1, 5)};
  std::vector<double> d{1, 0.6, 0.5, 0.2};
  EXPECT_NEAR(ratio_formula(a).get_d(), ratio_formula(d), 1e-12);
}

TEST(BoundsProperty, LambdaIsScaleInvariant) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(3 + trial % 6);
    for (auto& x : a) x = u(rng);
    std::sort(a.begin(), a.end(), std::greater<>());
    std::vector<double> s = a;
    for (auto& x : s) x *= 3.7;
    ASSERT_NEAR(lambda(a), lambda(s), 1e-12);
    ASSERT_NEAR(ratio_formula(a), ratio_formula(s), 1e-9);
  }
}

TEST(BoundsRecord, CsvRow) {
  auto r = bounds_record({1, 0.5, 0.25});
  EXPECT_EQ(r.k, 3u);
  EXPECT_DOUBLE_EQ(r.lambda, 0.5);
  EXPECT_EQ(to_csv_row(r).rfind("3,0.5,", 0), 0u);
  EXPECT_EQ(std::string(kBoundsCsvHeader), "k,lambda,f_closed,bound_a,bound_b,min_bound");
}

TEST(Monotonicity, CounterexampleAndCorrection) {
  auto bad = rational_monotonicity_check(0.0, 1.0, 1.0, 1.0, 1.0, 0.0);
  EXPECT_FALSE(bad.inequality_holds);
  EXPECT_FALSE(bad.correction_holds);
  auto good = rational_monotonicity_check(2.0, 1.0, 1.0, 1.0, 1.0, 0.0);
  EXPECT_TRUE(good.correction_holds);
  EXPECT_TRUE(good.inequality_holds);
  EXPECT_THROW(rational_monotonicity_check(1.0, 0.0, 1.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(rational_monotonicity_check(1.0, 1.0, 2.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(rational_monotonicity_check(1.0, 1.0, 1.0, 1.0, 0.0, 1.0), DomainError);
}

TEST(Monotonicity, CorrectionImpliesInequalityOnRandomTuples) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> d(0, 50);
  for (int trial = 0; trial < 20000; ++trial) {
    Rational x(d(rng), 10), y(d(rng) + 1, 10), a(d(rng), 10), b(d(rng), 10);
    Rational v(d(rng), 10), vp(d(rng), 10);
    if (a > b) std::swap(a, b);
    if (v < vp) std::swap(v, vp);
    auto r = rational_monotonicity_check(x, y, a, b, v, vp);
    if (r.correction_holds) {
      ASSERT_TRUE(r.inequality_holds);
    }
  }
}
