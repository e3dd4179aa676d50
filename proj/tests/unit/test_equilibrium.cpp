#include <gtest/gtest.h>

#include "gsp/equilibrium.hpp"
#include "gsp/feasibility.hpp"
#include "gsp/search.hpp"
#include "test_support.hpp"

using namespace gsp;
using gsp::testing::q;
using gsp::testing::qs;

TEST(BestDeviation, WitnessAdvertiserOneStays) {
  auto inst = gsp::testing::witness();
  auto dev = best_deviation(inst, gsp::testing::witness_bids(), 0);
  EXPECT_EQ(dev.current_slot, 2u);
  EXPECT_EQ(dev.current_utility, q("0.47"));
  EXPECT_EQ(dev.best_utility, q("0.47"));
  EXPECT_EQ(dev.best_slot, 2u);
  EXPECT_EQ(dev.options[1].utility, q("0.4675"));
  EXPECT_EQ(dev.options[0].utility, q("0.47"));
}

TEST(BestDeviation, CheaperSlotAboveCreatesRegret) {
  auto inst = gsp::testing::witness();
  auto bids = qs({"0", "0.53", "0.05", "0"});
  auto report = verify_nash(inst, bids, Rational(0));
  EXPECT_FALSE(report.is_nash);
  EXPECT_EQ(report.records[0].best_slot, 1u);
  EXPECT_EQ(report.records[0].regret, q("0.0525"));
  EXPECT_THROW(best_deviation(inst, bids, 7), InputError);
}

TEST(VerifyNash, WitnessExactAndFloat) {
  auto inst = gsp::testing::witness();
  auto bids = gsp::testing::witness_bids();
  auto exact = verify_nash(inst, bids, Rational(0));
  EXPECT_TRUE(exact.is_nash);
  EXPECT_EQ(exact.max_regret, Rational(0));
  auto fl = verify_nash(to_double(inst), to_doubles(bids), 1e-9);
  EXPECT_TRUE(fl.is_nash);
  EXPECT_LT(fl.max_regret, 1e-12);
  EXPECT_THROW(verify_nash(inst, bids, Rational(-1)), InputError);
}

TEST(VerifyNash, TieBreakInjectionChangesTheOutcome) {
  auto inst = gsp::testing::witness();
  auto bids = gsp::testing::witness_bids();
  EXPECT_NE(allocate(inst, bids, TieBreak::descending_index), Assignment::from_one_based({2, 3, 1, 4}));
}

TEST(WeakFeasibility, DetectsViolation) {
  AuctionInstance<Rational> inst(qs({"1", "0.5"}), qs({"1", "0"}));
  auto pi = Assignment::from_one_based({2, 1});
  auto rep = weakly_feasible(inst, pi, Rational(0));
  EXPECT_FALSE(rep.holds);
  EXPECT_EQ(rep.worst_upper, 0u);
  EXPECT_EQ(rep.worst_lower, 1u);
  EXPECT_LT(rep.worst_slack, Rational(0));
  EXPECT_TRUE(weakly_feasible_exact(inst, Assignment::identity(2)));
}

TEST(SupportSystem, RowsCarryProvenance) {
  auto inst = gsp::testing::witness();
  auto sys = support_system(inst, Assignment::from_one_based({2, 3, 1, 4}));
  EXPECT_EQ(sys.dimension(), 4u);
  std::size_t up = 0, down = 0;
  for (const auto& row : sys.constraints()) {
    up += row.provenance.kind == ConstraintKind::no_gain_moving_up;
    down += row.provenance.kind == ConstraintKind::no_gain_moving_down;
  }
  EXPECT_EQ(up + down, 12u);
  EXPECT_TRUE(sys.satisfied_by(gsp::testing::witness_bids()));
  EXPECT_NE(sys.listing().find("[no_gain_moving_up a1 s3->s1] 1*b2 - 0.47*b4 >= 0.53"),
            std::string::npos);
}

TEST(SupportSystem, ZeroValueOnTopIsInfeasible) {
  AuctionInstance<Rational> inst(qs({"1", "0"}), qs({"1", "1"}));
  auto res = solve(support_system(inst, Assignment::from_one_based({2, 1})));
  EXPECT_FALSE(res.feasible());
  EXPECT_FALSE(res.conflict.empty());
}

TEST(EquilibriumProperty, NashImpliesWeaklyFeasible) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> bid(0, 20);
  std::size_t checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t n = 2 + trial % 3;
    auto inst = gsp::testing::random_instance(n, rng, 20);
    BidProfile<Rational> bids(n);
    for (std::size_t i = 0; i < n; ++i) bids[i] = inst.value(i) * Rational(bid(rng), 20);
    auto report = verify_nash(inst, bids, Rational(0));
    if (!report.is_nash) continue;
    ++checked;
    ASSERT_TRUE(weakly_feasible_exact(inst, report.assignment)) << report.assignment.to_string();
  }
  EXPECT_GT(checked, 100u);
}

TEST(EquilibriumProperty, SupportSystemWitnessesAreEquilibria) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + trial % 3;
    auto inst = gsp::testing::random_instance(n, rng);
    for (const auto& pi : all_assignments(n)) {
      auto res = solve(support_system(inst, pi));
      if (!res.feasible()) continue;
      ASSERT_EQ(allocate(inst, res.witness), pi);
      ASSERT_TRUE(verify_nash(inst, res.witness, Rational(0)).is_nash);
    }
  }
}

TEST(Dynamics, StaysPutAtAnEquilibrium) {
  auto inst = gsp::testing::witness();
  DynamicsConfig cfg;
  auto r = best_response_dynamics(inst, gsp::testing::witness_bids(), cfg, Rational(0));
  EXPECT_EQ(r.status, DynamicsStatus::converged);
  EXPECT_TRUE(r.moves.empty());
  EXPECT_TRUE(r.terminal.is_nash);
}

TEST(Dynamics, DeterministicForSeed) {
  auto inst = gsp::testing::witness();
  auto start = qs({"0.1", "0.5", "0.15", "0"});
  DynamicsConfig cfg;
  cfg.seed = 5;
  auto a = best_response_dynamics(inst, start, cfg, Rational(0));
  auto b = best_response_dynamics(inst, start, cfg, Rational(0));
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_FALSE(a.moves.empty());
}
