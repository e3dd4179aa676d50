#include <gtest/gtest.h>

#include "gsp/equilibrium.hpp"
#include "gsp/feasibility.hpp"
#include "gsp/io.hpp"
#include "test_support.hpp"

using namespace gsp;

TEST(Io, InstanceRoundTrip) {
  auto inst = gsp::testing::witness();
  auto back = instance_from_json(to_json(inst), Normalization::unit);
  EXPECT_EQ(back, inst);
  auto bids = gsp::testing::witness_bids();
  EXPECT_EQ(bids_from_json(bids_to_json(bids)), bids);
}

TEST(Io, ExactStringsSurviveRoundTrip) {
  AuctionInstance<Rational> inst({Rational(1), Rational(1, 3)}, {Rational(1), Rational(2, 7)});
  Json j = Json::parse(R"({"values":["1","1/3"],"ctrs":["1","2/7"]})");
  EXPECT_EQ(instance_from_json(j, Normalization::unit), inst);
}

TEST(Io, MalformedInputs) {
  EXPECT_THROW(parse_json("{\"values\": [1,"), InputError);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"values":[1]})"), Normalization::unit), InputError);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"values":[1],"ctrs":[true]})"), Normalization::unit),
               InputError);
  EXPECT_THROW(read_file("/nonexistent/file.json"), InputError);
}

TEST(Io, LinearSystemRoundTrip) {
  auto sys = support_system(gsp::testing::witness(), Assignment::from_one_based({2, 3, 1, 4}));
  auto back = linear_system_from_json(to_json(sys));
  EXPECT_EQ(back.listing(), sys.listing());
  EXPECT_EQ(solve(back).witness, solve(sys).witness);
}

TEST(Io, ReportsAreSerialized) {
  auto report = verify_nash(gsp::testing::witness(), gsp::testing::witness_bids(), Rational(0));
  auto j = to_json(report);
  EXPECT_TRUE(j["is_nash"].get<bool>());
  EXPECT_EQ(j["permutation"], Json::parse("[2,3,1,4]"));
  EXPECT_EQ(j["records"][2]["current_utility_exact"], "0.0825");
}

TEST(Io, FrontierCsvShape) {
  EXPECT_EQ(frontier_csv_header(2), "candidate_id,n,permutation,ratio,certified,v1,v2,a1,a2,b1,b2");
  CandidateRecord rec;
  rec.permutation = Assignment::from_one_based({2, 1});
  rec.instance = AuctionInstance<Rational>({Rational(1), Rational(1, 2)}, {Rational(1), Rational(1, 2)});
  rec.bids = {Rational(1, 4), Rational(1, 2)};
  rec.ratio = Rational(5, 4);
  rec.certified = true;
  EXPECT_EQ(frontier_csv_row(rec), "0,2,2 1,1.25,1,1,0.5,1,0.5,0.25,0.5");
}

TEST(Io, DigestIsStable) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_NE(digest("a"), digest("b"));
}
