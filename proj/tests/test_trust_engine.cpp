#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "strust/strust.hpp"

using namespace strust;
using testing_support::three_member_example;

namespace {

constexpr double kTol = 1e-12;
const MemberId A("A"), B("B"), C("C");

// The three-member example as an oracle model: A=0, B=1, C=2.
oracle::Model three_member_model() {
  oracle::Model m;
  m.members = 3;
  m.events = {{1, 0, 0, true}, {1, 0, 0, true}, {2, 0, 0, true}};
  return m;
}

}  // namespace

TEST(BetaMean, Values) {
  EXPECT_EQ(beta_mean(0, 0), 0.5);
  EXPECT_NEAR(beta_mean(1, 0), 2.0 / 3.0, kTol);
  EXPECT_NEAR(beta_mean(0, 4), 1.0 / 6.0, kTol);
}

TEST(AlphaTest, Domain) {
  EXPECT_NO_THROW(Alpha(0.0));
  EXPECT_NO_THROW(Alpha(1.0));
  EXPECT_THROW(Alpha(-0.01), InvalidArgument);
  EXPECT_THROW(Alpha(1.5), InvalidArgument);
  EXPECT_THROW(Alpha(std::nan("")), InvalidArgument);
}

TEST(OracleFixture, ThreeMemberValuesMatchHandDerivation) {
  // Frozen from the brute-force oracle; cross-checked against hand fractions.
  const auto m = three_member_model();
  EXPECT_NEAR(oracle::pop(m, 0), 17.0 / 24.0, kTol);
  EXPECT_NEAR(oracle::eng(m, 1), 0.625, kTol);
  EXPECT_NEAR(oracle::eng(m, 2), 7.0 / 12.0, kTol);
  EXPECT_NEAR(oracle::social(m, 0, 0.5), 29.0 / 48.0, kTol);
  EXPECT_NEAR(oracle::community(m, 0.5), 41.0 / 72.0, kTol);
}

TEST(PopTrust, ThreeMemberExample) {
  const auto s = three_member_example();
  EXPECT_NEAR(pop_trust_context(s, A, ContextId::global()), 17.0 / 24.0, kTol);  // 0.70833
  EXPECT_NEAR(pop_trust_context(s, B, ContextId::global()), 0.5, kTol);
  EXPECT_NEAR(pop_trust(s, A), 17.0 / 24.0, kTol);
}

TEST(PopTrust, OnePositiveFromEveryone) {
  std::vector<Interaction> ledger;
  for (const char* who : {"b", "c", "d", "e"}) {
    ledger.push_back({.source = MemberId(who), .target = MemberId("a")});
  }
  const auto s = InteractionStore::from_ledger(ledger);
  EXPECT_NEAR(pop_trust(s, MemberId("a")), 2.0 / 3.0, kTol);
}

TEST(EngTrust, ThreeMemberExample) {
  const auto s = three_member_example();
  EXPECT_NEAR(eng_trust_context(s, B, ContextId::global()), 0.625, kTol);
  EXPECT_NEAR(eng_trust_context(s, A, ContextId::global()), 0.5, kTol);
  EXPECT_NEAR(eng_trust_context(s, C, ContextId::global()), 7.0 / 12.0, kTol);  // 0.58333
}

TEST(ContextAggregationTest, MeanOverStoreContexts) {
  // b -> a in "x" only: context values for a are 0.75 (x) and 0.5 (y), mean 0.625.
  Interaction x{.source = MemberId("b"), .target = MemberId("a"), .context = ContextId("x")};
  Interaction y{.source = MemberId("a"), .target = MemberId("b"), .context = ContextId("y")};
  Interaction x2 = x;
  const auto s = InteractionStore::from_ledger({x, x2, y});
  // a receives 2 in x (beta 0.75) over |M|-1 = 1; nothing in y.
  EXPECT_NEAR(pop_trust_context(s, MemberId("a"), ContextId("x")), 0.75, kTol);
  EXPECT_NEAR(pop_trust_context(s, MemberId("a"), ContextId("y")), 0.5, kTol);
  EXPECT_NEAR(pop_trust(s, MemberId("a")), 0.625, kTol);
  // Member-context mode: a is present in both contexts, so nothing changes...
  EXPECT_NEAR(pop_trust(s, MemberId("a"), {ContextAggregation::member_contexts}), 0.625, kTol);
}

TEST(ContextAggregationTest, MemberContextModeSkipsAbsentContexts) {
  Interaction x{.source = MemberId("b"), .target = MemberId("a"), .context = ContextId("x")};
  Interaction y{.source = MemberId("c"), .target = MemberId("d"), .context = ContextId("y")};
  const auto s = InteractionStore::from_ledger({x, y});
  // a only appears in x: (1 * 2/3 + 2 * 0.5) / 3 = 5/9.
  const double in_x = 5.0 / 9.0;
  EXPECT_NEAR(pop_trust(s, MemberId("a")), (in_x + 0.5) / 2.0, kTol);
  EXPECT_NEAR(pop_trust(s, MemberId("a"), {ContextAggregation::member_contexts}), in_x, kTol);
}

TEST(StrustMember, ThreeMemberExample) {
  const auto s = three_member_example();
  const auto score = strust_member(s, A, Alpha(0.5));
  EXPECT_NEAR(score.social, 29.0 / 48.0, kTol);  // 0.60417
  EXPECT_FALSE(score.degenerate);
}

TEST(StrustMember, AlphaReductionsAreExact) {
  const auto s = three_member_example();
  for (const auto& m : s.members()) {
    const auto one = strust_member(s, m, Alpha(1.0));
    EXPECT_EQ(one.social, one.popularity);
    const auto zero = strust_member(s, m, Alpha(0.0));
    EXPECT_EQ(zero.social, zero.engagement);
  }
}

TEST(StrustCommunity, ThreeMemberExample) {
  const auto c = strust_community(three_member_example(), Alpha(0.5));
  EXPECT_NEAR(c.value, 41.0 / 72.0, kTol);  // 0.56944
  EXPECT_TRUE(c.is_trust_community);
}

TEST(StrustCommunity, EmptyLedgerIsBootstrap) {
  const auto s = InteractionStore::from_ledger({}, {MemberId("a"), MemberId("b"), MemberId("c")});
  for (double alpha : {0.0, 0.3, 1.0}) {
    const auto c = strust_community(s, Alpha(alpha));
    EXPECT_NEAR(c.value, 0.5, kTol);
    EXPECT_FALSE(c.is_trust_community);
  }
}

TEST(StrustCommunity, DegenerateCommunities) {
  const auto one = InteractionStore::from_ledger({}, {MemberId("solo")});
  const auto score = strust_member(one, MemberId("solo"), Alpha(0.5));
  EXPECT_EQ(score.popularity, 0.5);
  EXPECT_EQ(score.engagement, 0.5);
  EXPECT_TRUE(score.degenerate);
  EXPECT_TRUE(strust_community(one, Alpha(0.5)).degenerate);
  const auto none = strust_community(InteractionStore(), Alpha(0.5));
  EXPECT_EQ(none.value, 0.5);
  EXPECT_TRUE(none.degenerate);
}

TEST(PairTrustTest, ThreeMemberExample) {
  const auto s = three_member_example();
  for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
    const auto p = pair_trust(s, A, B, ContextId::global(), Alpha(alpha));
    EXPECT_NEAR(p.popularity_pair, 1.25, kTol);
    EXPECT_NEAR(p.engagement_pair, 1.25, kTol);
    EXPECT_NEAR(p.social_pair, 1.25, kTol);
  }
}

TEST(PairTrustTest, NoInteractionsIsTwoBootstraps) {
  const auto s = three_member_example();
  const auto p = pair_trust(s, B, C, ContextId::global(), Alpha(0.5));
  EXPECT_EQ(p.popularity_pair, 1.0);
  EXPECT_EQ(p.engagement_pair, 1.0);
  EXPECT_EQ(p.social_pair, 1.0);
}

TEST(PairTrustTest, SymmetricAndErrors) {
  const auto s = three_member_example();
  const auto ab = pair_trust(s, A, C, ContextId::global(), Alpha(0.3));
  const auto ba = pair_trust(s, C, A, ContextId::global(), Alpha(0.3));
  EXPECT_EQ(ab.popularity_pair, ba.popularity_pair);
  EXPECT_EQ(ab.engagement_pair, ba.engagement_pair);
  EXPECT_EQ(ab.social_pair, ba.social_pair);
  EXPECT_THROW((void)pair_trust(s, A, A, ContextId::global(), Alpha(0.5)), SamePair);
  EXPECT_THROW((void)pair_trust(s, A, MemberId("Z"), ContextId::global(), Alpha(0.5)), UnknownMember);
}

TEST(TrustErrors, UnknownMemberAndContext) {
  const auto s = three_member_example();
  EXPECT_THROW((void)pop_trust(s, MemberId("Z")), UnknownMember);
  EXPECT_THROW((void)eng_trust_context(s, A, ContextId("nope")), UnknownContext);
}

TEST(TrustNegative, NegativeEventsLowerTrust) {
  Interaction neg{.source = MemberId("b"), .target = MemberId("a"), .polarity = Polarity::negative};
  const auto s = InteractionStore::from_ledger({neg, neg, neg, neg});
  // beta(0, 4) = 1/6 with a single peer.
  EXPECT_NEAR(pop_trust(s, MemberId("a")), 1.0 / 6.0, kTol);
  EXPECT_NEAR(eng_trust(s, MemberId("b")), 1.0 / 6.0, kTol);
  EXPECT_FALSE(strust_community(s, Alpha(0.5)).is_trust_community);
}

// Engine against the brute-force oracle on random stores with every
// feature switched on (negatives, passives, weights, two contexts).
TEST(TrustOracle, MatchesBruteForce) {
  for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
    const auto model = testing_support::random_model(seed);
    const auto store = testing_support::to_store(model);
    for (double alpha : {0.0, 0.35, 1.0}) {
      for (int i = 0; i < model.members; ++i) {
        const auto s = strust_member(store, testing_support::member(i), Alpha(alpha));
        ASSERT_NEAR(s.popularity, oracle::pop(model, i), kTol) << "seed " << seed;
        ASSERT_NEAR(s.engagement, oracle::eng(model, i), kTol) << "seed " << seed;
        ASSERT_NEAR(s.social, oracle::social(model, i, alpha), kTol) << "seed " << seed;
      }
      ASSERT_NEAR(strust_community(store, Alpha(alpha)).value, oracle::community(model, alpha), kTol);
    }
  }
}
