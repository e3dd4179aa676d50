#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gsp/equilibrium.hpp"
#include "gsp/feasibility.hpp"
#include "test_support.hpp"

using namespace gsp;

namespace {

LinearConstraint row(std::vector<long> coeffs, Relation rel, Rational c) {
  LinearConstraint r;
  for (long x : coeffs) r.coeffs.emplace_back(x);
  r.relation = rel;
  r.constant = std::move(c);
  return r;
}

LinearSystem one_variable(Relation lower, Relation upper, Rational lo, Rational hi) {
  LinearSystem sys({"x"});
  sys.add(row({1}, lower, lo));
  sys.add(row({1}, upper, hi));
  return sys;
}

}  // namespace

TEST(Solve, StrictnessDecidesPointIntervals) {
  EXPECT_TRUE(solve(one_variable(Relation::ge, Relation::le, Rational(1), Rational(1))).feasible());
  EXPECT_FALSE(solve(one_variable(Relation::ge, Relation::lt, Rational(1), Rational(1))).feasible());
  EXPECT_FALSE(solve(one_variable(Relation::gt, Relation::le, Rational(1), Rational(1))).feasible());
  auto open = solve(one_variable(Relation::gt, Relation::lt, Rational(0), Rational(1)));
  ASSERT_TRUE(open.feasible());
  EXPECT_GT(open.witness[0], 0);
  EXPECT_LT(open.witness[0], 1);
}

TEST(Solve, EmptySystemAndConstantRows) {
  LinearSystem sys({"x", "y"});
  auto res = solve(sys);
  ASSERT_TRUE(res.feasible());
  EXPECT_EQ(res.witness.size(), 2u);
  sys.add(row({0, 0}, Relation::le, Rational(-1)));
  EXPECT_FALSE(solve(sys).feasible());
}

TEST(Solve, TwoDimensionalTriangle) {
  LinearSystem sys({"x", "y"});
  sys.add(row({1, 0}, Relation::gt, Rational(0)));
  sys.add(row({0, 1}, Relation::gt, Rational(0)));
  sys.add(row({1, 1}, Relation::lt, Rational(1)));
  auto res = solve(sys);
  ASSERT_TRUE(res.feasible());
  EXPECT_TRUE(sys.satisfied_by(res.witness));
  sys.add(row({1, 1}, Relation::gt, Rational(1)));
  EXPECT_FALSE(solve(sys).feasible());
}

TEST(Solve, RejectsBadInputs) {
  LinearSystem sys({"x"});
  EXPECT_THROW(sys.add(row({1, 2}, Relation::le, Rational(0))), InputError);
  std::vector<std::string> names(13, "v");
  EXPECT_THROW(solve(LinearSystem(names)), InputError);
  SolveOptions bad;
  bad.order = {0, 0};
  EXPECT_THROW(solve(LinearSystem({"x", "y"}), bad), InputError);
}

TEST(Solve, EliminationOrderDoesNotChangeTheVerdict) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t n = 2 + trial % 3;
    auto inst = gsp::testing::random_instance(n, rng, 10);
    for (const auto& pi : all_assignments(n)) {
      auto sys = support_system(inst, pi);
      auto greedy = solve(sys);
      SolveOptions opt;
      opt.order.resize(n);
      std::iota(opt.order.begin(), opt.order.end(), 0);
      std::shuffle(opt.order.begin(), opt.order.end(), rng);
      auto fixed = solve(sys, opt);
      ASSERT_EQ(greedy.status, fixed.status) << pi.to_string();
      if (fixed.feasible()) {
        ASSERT_TRUE(sys.satisfied_by(fixed.witness));
      }
    }
  }
}

TEST(Solve, ReportsEliminationTrace) {
  auto inst = gsp::testing::witness();
  auto res = solve(support_system(inst, Assignment::from_one_based({2, 3, 1, 4})));
  ASSERT_TRUE(res.feasible());
  EXPECT_EQ(res.eliminated_order.size(), 4u);
  EXPECT_EQ(res.rows_per_stage.size(), 5u);
}
