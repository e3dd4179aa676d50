#include <gtest/gtest.h>

#include "gsp/acceptance.hpp"
#include "gsp/search.hpp"
#include "test_support.hpp"

using namespace gsp;
using gsp::testing::qs;

TEST(Permutations, CyclicShift) {
  EXPECT_EQ(cyclic_permutation(4), Assignment::from_one_based({2, 3, 4, 1}));
  EXPECT_THROW(cyclic_permutation(0), InputError);
}

TEST(Permutations, ZeroSecondCtrLeavesOnlyIdentity) {
  AuctionInstance<Rational> inst(qs({"1", "0"}), qs({"1", "0"}));
  auto perms = enumerate_ne_permutations(inst);
  ASSERT_EQ(perms.size(), 1u);
  EXPECT_EQ(perms[0], Assignment::identity(2));
}

TEST(Permutations, WitnessIncludesTheReportedOrder) {
  auto perms = enumerate_ne_permutations(gsp::testing::witness());
  EXPECT_NE(std::find(perms.begin(), perms.end(), Assignment::from_one_based({2, 3, 1, 4})),
            perms.end());
  EXPECT_NE(std::find(perms.begin(), perms.end(), Assignment::identity(4)), perms.end());
}

TEST(EvaluatePair, CertifiesWitness) {
  CandidateRecord rec;
  auto status = evaluate_pair(gsp::testing::witness(), Assignment::from_one_based({2, 3, 1, 4}),
                              true, TieBreak::ascending_index, rec);
  EXPECT_EQ(status, PairStatus::certified);
  EXPECT_TRUE(rec.certified);
  EXPECT_EQ(rec.ratio, parse_rational("1.362") / parse_rational("1.0825"));
}

TEST(EvaluatePair, PrefilterPrunes) {
  AuctionInstance<Rational> inst(qs({"1", "0.5"}), qs({"1", "0"}));
  CandidateRecord rec;
  EXPECT_EQ(evaluate_pair(inst, Assignment::from_one_based({2, 1}), true, TieBreak::ascending_index, rec),
            PairStatus::pruned);
  EXPECT_EQ(evaluate_pair(inst, Assignment::from_one_based({2, 1}), false, TieBreak::ascending_index, rec),
            PairStatus::infeasible);
}

TEST(Probe, SignsOnTheWitness) {
  auto inst = to_double(gsp::testing::witness());
  auto pi = Assignment::from_one_based({2, 3, 1, 4});
  auto r = monotonicity_probe(inst, pi, 1, 1e-4);
  EXPECT_EQ(r.stencil, Stencil::central);
  EXPECT_LT(r.derivative, 0);
  // v4 = 0 sits on the domain boundary; only a forward step stays ordered.
  auto edge = monotonicity_probe(inst, pi, 3, 1e-4);
  EXPECT_EQ(edge.stencil, Stencil::forward);
}

TEST(Search, ConfigValidation) {
  SearchConfig cfg;
  cfg.n = 0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg.n = 3;
  cfg.grid_step = 0;
  EXPECT_THROW(cfg.validate(), InputError);
}

TEST(Search, DeterministicForSeed) {
  SearchConfig cfg;
  cfg.n = 3;
  cfg.samples = 300;
  cfg.seed = 9;
  cfg.refine_iterations = 20;
  auto a = poa_lower_bound(cfg);
  cfg.workers = 3;
  auto b = poa_lower_bound(cfg);
  EXPECT_EQ(a.best_ratio, b.best_ratio);
  EXPECT_EQ(a.best_instance, b.best_instance);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.stats.certified, b.stats.certified);
  EXPECT_GE(a.best_ratio, 1);
  EXPECT_TRUE(verify_nash(a.best_instance, a.witness, Rational(0)).is_nash);
}

TEST(Search, SeededWitnessIsKeptAndRefined) {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.target = Assignment::from_one_based({2, 3, 1, 4});
  cfg.seeds = {gsp::testing::witness()};
  cfg.refine_iterations = 30;
  auto r = poa_lower_bound(cfg);
  EXPECT_GE(r.best_ratio, parse_rational("1.362") / parse_rational("1.0825"));
  EXPECT_LE(r.best_ratio, parse_rational("1.26"));
}

TEST(FaultInjection, ReversedTieBreakFailsWitnessCriterion) {
  acceptance::Options opt;
  EXPECT_TRUE(acceptance::run_criterion(1, opt).passed);
  opt.tie = TieBreak::descending_index;
  EXPECT_FALSE(acceptance::run_criterion(1, opt).passed);
}
