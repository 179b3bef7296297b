#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "strust/strust.hpp"

using namespace strust;
using testing_support::three_member_example;

TEST(RemoveMembers, RemovingAClearsTheLedger) {
  const auto after = remove_members(three_member_example(), {MemberId("A")});
  EXPECT_EQ(after.member_count(), 2u);
  EXPECT_TRUE(after.contains(MemberId("B")));
  EXPECT_TRUE(after.ledger().empty());
  EXPECT_EQ(after.social_capital(), (SocialCapital{0, 0}));
}

TEST(RemoveMembers, EmptyRemovalIsIdentity) {
  const auto s = three_member_example();
  EXPECT_EQ(store_to_json(remove_members(s, {})).dump(), store_to_json(s).dump());
}

TEST(RemoveMembers, RemoveAll) {
  const auto s = three_member_example();
  const auto after = remove_members(s, {MemberId("A"), MemberId("B"), MemberId("C")});
  EXPECT_EQ(after.member_count(), 0u);
  EXPECT_EQ(after.social_capital(), (SocialCapital{0, 0}));
  const auto r = measure_removal(s, {MemberId("A"), MemberId("B"), MemberId("C")}, 100, Alpha(0.5));
  EXPECT_EQ(r.capital_drop_pct, 100.0);
  EXPECT_TRUE(capital_drop_check(r, 99.9));
}

TEST(RemoveMembers, UnknownMember) {
  EXPECT_THROW((void)remove_members(three_member_example(), {MemberId("Q")}), UnknownMember);
}

TEST(RemoveMembers, ContextSetFollowsSurvivingLedger) {
  Interaction x{.source = MemberId("a"), .target = MemberId("b"), .context = ContextId("x")};
  Interaction y{.source = MemberId("c"), .target = MemberId("b"), .context = ContextId("y")};
  const auto after = remove_members(InteractionStore::from_ledger({x, y}), {MemberId("c")});
  ASSERT_EQ(after.context_count(), 1u);
  EXPECT_EQ(after.contexts()[0].str(), "x");
}

TEST(MeasureRemoval, EmptyRemoval) {
  const auto r = measure_removal(three_member_example(), {}, 0, Alpha(0.5));
  EXPECT_EQ(r.capital_drop_pct, 0.0);
  EXPECT_FALSE(capital_drop_check(r, 0.001));
  ASSERT_TRUE(r.trust_drop_pct);
  EXPECT_NEAR(*r.trust_drop_pct, 0.0, 1e-12);
}

TEST(MeasureRemoval, MetricsOnThreeMemberExample) {
  const auto s = three_member_example();
  const auto r = measure_removal(s, {MemberId("C")}, 33, Alpha(0.5));
  // Survivors A, B with B -> A twice: pop(A) = 0.75, eng(B) = 0.75.
  const double after = (0.5 * (0.75 + 0.5) + 0.5 * (0.5 + 0.75)) / 2.0;
  EXPECT_NEAR(r.trust_after, after, 1e-12);
  EXPECT_NEAR(r.trust_before, 41.0 / 72.0, 1e-12);
  EXPECT_NEAR(*r.trust_drop_pct, 100.0 * (41.0 / 72.0 - after) / (41.0 / 72.0 - 0.5), 1e-9);
  EXPECT_EQ(r.capital_after, (SocialCapital{2, 1}));
  EXPECT_NEAR(r.capital_drop_pct, 100.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.unique_drop_pct, 50.0, 1e-12);
  EXPECT_NEAR(r.gap_pct, 50.0, 1e-12);
  EXPECT_EQ(r.interactions_reduced_pct, r.capital_drop_pct);
}

TEST(MeasureRemoval, NoTrustDropWithoutSurplusOverBootstrap) {
  const auto s = InteractionStore::from_ledger({}, {MemberId("a"), MemberId("b"), MemberId("c")});
  const auto r = measure_removal(s, {MemberId("a")}, 33, Alpha(0.5));
  EXPECT_FALSE(r.trust_drop_pct);
  EXPECT_EQ(r.gap_pct, 0.0);
}

TEST(RunRemoval, SpecValidation) {
  const auto s = testing_support::to_store(testing_support::random_model(3, {.max_members = 5}));
  RemovalSpec spec;
  spec.percents = {10, 5};
  EXPECT_THROW(spec.validate(40), InvalidArgument);
  spec.percents = {0};
  EXPECT_THROW(spec.validate(40), InvalidArgument);
  spec.percents = {100};
  EXPECT_THROW(spec.validate(40), InvalidArgument);
  spec.percents = {1};  // 0.4 members
  EXPECT_THROW(spec.validate(40), InvalidArgument);
  spec.percents = {98};  // 39.2 -> 39 = |M| - 1
  EXPECT_NO_THROW(spec.validate(40));
  spec.percents = {99};  // 39.6 -> 40 = |M|
  EXPECT_THROW(spec.validate(40), InvalidArgument);
  spec.percents = {};
  EXPECT_THROW(spec.validate(40), InvalidArgument);
}

TEST(RunRemoval, IndependentNestedRuns) {
  // 20 members in a ring plus a few hubs.
  std::vector<Interaction> ledger;
  for (int i = 0; i < 20; ++i) {
    ledger.push_back({.source = MemberId(std::to_string(i)), .target = MemberId(std::to_string((i + 1) % 20))});
    if (i % 4 == 1) ledger.push_back({.source = MemberId(std::to_string(i)), .target = MemberId("0"), .weight = 3});
  }
  const auto s = InteractionStore::from_ledger(ledger);
  const RemovalSpec spec{TrustKind::social(Alpha(0.5)), {5, 10, 15}};
  const auto reports = run_removal(s, spec, Alpha(0.5));
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].removed.size(), 1u);
  EXPECT_EQ(reports[1].removed.size(), 2u);
  EXPECT_EQ(reports[2].removed.size(), 3u);
  EXPECT_TRUE(removals_nested(reports));
  for (const auto& r : reports) EXPECT_EQ(r.capital_before, s.social_capital());
  const auto curve = gap_curve(reports);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_EQ(curve[1].first, 10.0);
  EXPECT_EQ(curve[1].second, reports[1].gap_pct);
}

TEST(GapCurve, EveryPairOnceMeansNoGap) {
  std::vector<Interaction> ledger;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      if (i != j) ledger.push_back({.source = MemberId(std::to_string(i)), .target = MemberId(std::to_string(j))});
    }
  }
  const auto s = InteractionStore::from_ledger(ledger);
  const auto reports = run_removal(s, {TrustKind::popularity(), {10, 20, 30}}, Alpha(0.5));
  for (const auto& [percent, gap] : gap_curve(reports)) EXPECT_EQ(gap, 0.0) << percent;
  EXPECT_THROW((void)gap_curve({}), InvalidArgument);
}

TEST(Reports, JsonAndCsvShapes) {
  const auto s = three_member_example();
  const auto reports = run_removal(s, {TrustKind::social(Alpha(0.5)), {34}}, Alpha(0.5));
  const auto doc = removal_json("tiny", TrustKind::social(Alpha(0.5)), Alpha(0.5), reports);
  EXPECT_EQ(doc["dataset"], "tiny");
  EXPECT_EQ(doc["kind"], "social");
  EXPECT_EQ(doc["alpha"], 0.5);
  ASSERT_EQ(doc["runs"].size(), 1u);
  EXPECT_EQ(doc["runs"][0]["removed"], nlohmann::ordered_json({"A"}));
  EXPECT_EQ(doc["runs"][0]["capital_after"]["total"], 0);
  const auto csv = removal_csv(reports);
  EXPECT_EQ(csv.rfind("percent,metric,value\n", 0), 0u);
  EXPECT_NE(csv.find("34,gap_pct,0\n"), std::string::npos);
  EXPECT_NE(csv.find("34,removed_count,1\n"), std::string::npos);
}
