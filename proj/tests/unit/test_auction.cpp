#include <gtest/gtest.h>

#include <set>

#include "gsp/auction.hpp"
#include "gsp/errors.hpp"
#include "test_support.hpp"

using namespace gsp;
using gsp::testing::q;
using gsp::testing::qs;

TEST(Numeric, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.53"), Rational(53, 100));
  EXPECT_EQ(parse_rational("053"), Rational(53));
  EXPECT_EQ(parse_rational("-1.5e-2"), Rational(-3, 200));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_THROW(parse_rational("abc"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
}

TEST(Numeric, DoubleConversionUsesShortestDecimal) {
  EXPECT_EQ(rational_from_double(0.1), Rational(1, 10));
  EXPECT_NE(exact_rational(0.1), Rational(1, 10));
  EXPECT_EQ(format_rational(Rational(1, 3)), "1/3");
  EXPECT_EQ(format_rational(Rational(433, 400)), "1.0825");
}

TEST(Assignment, RejectsNonBijections) {
  EXPECT_THROW(Assignment({0, 0}), InputError);
  EXPECT_THROW(Assignment::from_one_based({1, 3}), InputError);
  auto pi = parse_assignment("2,3,1,4");
  EXPECT_EQ(pi.advertiser_at(0), 1u);
  EXPECT_EQ(pi.slot_of(0), 2u);
  EXPECT_EQ(pi.to_string(), "(2,3,1,4)");
  EXPECT_EQ(all_assignments(4).size(), 24u);
}

TEST(Instance, ValidatesShapeAndNormalization) {
  EXPECT_THROW(AuctionInstance<Rational>({}, {}), InputError);
  EXPECT_THROW(AuctionInstance<Rational>(qs({"1", "0.5"}), qs({"1"})), InputError);
  EXPECT_THROW(AuctionInstance<Rational>(qs({"1", "1.2"}), qs({"1", "0.5"})), InputError);
  EXPECT_THROW(AuctionInstance<Rational>(qs({"2", "1"}), qs({"1", "0.5"})), InputError);
  AuctionInstance<Rational> scaled(qs({"2", "1"}), qs({"4", "1"}), Normalization::rescale);
  EXPECT_EQ(scaled.values(), qs({"1", "0.5"}));
  EXPECT_EQ(scaled.ctrs(), qs({"1", "0.25"}));
}

TEST(Settle, WitnessPaymentsAndUtilities) {
  auto inst = gsp::testing::witness();
  auto out = settle(inst, gsp::testing::witness_bids());
  EXPECT_EQ(out.assignment, Assignment::from_one_based({2, 3, 1, 4}));
  EXPECT_EQ(out.payments, qs({"0.15", "0", "0", "0"}));
  EXPECT_EQ(out.utilities[1], q("0.38"));
  EXPECT_EQ(out.utilities[2], q("0.0825"));
  EXPECT_EQ(out.utilities[0], q("0.47"));
  EXPECT_EQ(out.utilities[3], q("0"));
  EXPECT_EQ(out.welfare, q("1.0825"));
  EXPECT_EQ(efficiency_ratio(inst, out.assignment), q("1.362") / q("1.0825"));
}

TEST(Settle, TwoSlotReversedOrder) {
  AuctionInstance<Rational> inst(qs({"1", "0.5"}), qs({"1", "0.5"}));
  auto out = settle(inst, qs({"0.25", "0.5"}));
  EXPECT_EQ(out.assignment, Assignment::from_one_based({2, 1}));
  EXPECT_EQ(out.payments, qs({"0.25", "0"}));
  EXPECT_EQ(out.utilities[1], q("0.25"));
  EXPECT_EQ(out.utilities[0], q("0.5"));
  EXPECT_EQ(out.welfare, q("1"));
}

TEST(Settle, ConservativenessViolationNamesAdvertiser) {
  AuctionInstance<Rational> inst(qs({"1", "0.5"}), qs({"1", "0.5"}));
  try {
    settle(inst, qs({"0.2", "0.6"}));
    FAIL() << "expected a violation";
  } catch (const ConservativenessViolation& e) {
    EXPECT_EQ(e.advertiser(), 1u);
  }
  EXPECT_THROW(settle(inst, qs({"-0.1", "0"})), ConservativenessViolation);
  EXPECT_THROW(settle(inst, qs({"0.1"})), InputError);
}

TEST(Allocate, TiesGoToLowerIndexUnlessInjected) {
  AuctionInstance<Rational> inst(qs({"1", "0.5", "0.5"}), qs({"1", "0.5", "0.2"}));
  auto bids = qs({"0.3", "0.3", "0.3"});
  EXPECT_EQ(allocate(inst, bids), Assignment::identity(3));
  EXPECT_EQ(allocate(inst, bids, TieBreak::descending_index), Assignment::from_one_based({3, 2, 1}));
}

TEST(Efficiency, ZeroWelfareIsDegenerate) {
  AuctionInstance<Rational> inst(qs({"1", "0"}), qs({"1", "0"}));
  EXPECT_THROW(efficiency_ratio(inst, Assignment::from_one_based({2, 1})), DegenerateInstance);
  EXPECT_EQ(efficiency_ratio(inst, Assignment::identity(2)), Rational(1));
}

TEST(AuctionProperty, AllocationIsBijectionAndRatioAtLeastOne) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> bid(0, 100);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = 2 + trial % 5;
    auto inst = gsp::testing::random_instance(n, rng);
    BidProfile<Rational> bids(n);
    for (std::size_t i = 0; i < n; ++i) bids[i] = inst.value(i) * Rational(bid(rng), 100);
    auto out = settle(inst, bids);
    std::set<std::size_t> seen(out.assignment.slot_to_adv().begin(), out.assignment.slot_to_adv().end());
    ASSERT_EQ(seen.size(), n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      ASSERT_GE(bids[out.assignment.advertiser_at(k)], bids[out.assignment.advertiser_at(k + 1)]);
    }
    if (out.welfare > 0) {
      ASSERT_GE(efficiency_ratio(inst, out.assignment), Rational(1));
    }
  }
}

TEST(AuctionProperty, RatioInvariantUnderScaling) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + trial % 4;
    auto inst = gsp::testing::random_instance(n, rng);
    auto perms = all_assignments(n);
    const auto& pi = perms[trial % perms.size()];
    if (welfare(inst, pi) == 0) continue;
    std::vector<Rational> v = inst.values(), a = inst.ctrs();
    for (auto& x : v) x *= Rational(7, 3);
    for (auto& x : a) x *= Rational(5, 2);
    AuctionInstance<Rational> scaled(v, a, Normalization::none);
    ASSERT_EQ(efficiency_ratio(inst, pi), efficiency_ratio(scaled, pi));
  }
}

TEST(Numeric, NearestDoubleRoundsCorrectly) {
  EXPECT_EQ(nearest_double(Rational(53, 100)), 0.53);
  EXPECT_EQ(nearest_double(Rational(-53, 100)), -0.53);
  EXPECT_EQ(nearest_double(Rational(1, 3)), 1.0 / 3.0);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 10000; ++i) {
    double d = u(rng);
    ASSERT_EQ(nearest_double(rational_from_double(d)), d);
  }
}
