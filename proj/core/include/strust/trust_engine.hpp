#pragma once

#include <cstdint>
#include <vector>

#include "strust/interaction_store.hpp"

namespace strust {

// Weight of popularity in the social-trust blend, in [0, 1].
class Alpha {
 public:
  // Throws InvalidArgument outside [0, 1] or for NaN.
  explicit Alpha(double value);

  double value() const noexcept { return value_; }

  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  double value_;
};

// How per-context values are averaged into a member's trust.
//  - store_contexts: divide by |X| of the store; contexts where the member is
//    absent contribute their bootstrap-laden value.
//  - member_contexts: average only over contexts where the member has any
//    ledger presence (falls back to all contexts when there are none).
enum class ContextAggregation { store_contexts, member_contexts };

struct TrustOptions {
  ContextAggregation aggregation = ContextAggregation::store_contexts;
};

inline constexpr double kBootstrapTrust = 0.5;

// (pos + 1) / (pos + neg + 2): the mean of Beta(pos + 1, neg + 1).
double beta_mean(std::uint64_t positive, std::uint64_t negative) noexcept;

// Mean over every other member j of beta_mean(events j -> member in context).
// A community of one member yields the 0.5 bootstrap.
double pop_trust_context(const InteractionStore& store, const MemberId& member,
                         const ContextId& context);
// Same as pop_trust_context over the events the member initiated.
double eng_trust_context(const InteractionStore& store, const MemberId& member,
                         const ContextId& context);

double pop_trust(const InteractionStore& store, const MemberId& member, TrustOptions options = {});
double eng_trust(const InteractionStore& store, const MemberId& member, TrustOptions options = {});

struct TrustScore {
  MemberId member;
  double popularity;
  double engagement;
  double social;
  Alpha alpha;
  // Set when |M| = 1 and every value is the bootstrap.
  bool degenerate = false;
};

TrustScore strust_member(const InteractionStore& store, const MemberId& member, Alpha alpha,
                         TrustOptions options = {});

// Scores for every member, in canonical member order.
std::vector<TrustScore> score_all(const InteractionStore& store, Alpha alpha,
                                  TrustOptions options = {});

struct CommunityTrust {
  double value;
  bool is_trust_community;  // value > 0.5
  bool degenerate;          // |M| <= 1
};

CommunityTrust strust_community(const InteractionStore& store, Alpha alpha,
                                TrustOptions options = {});
// Community value from precomputed scores (must cover every member once).
CommunityTrust community_from_scores(const std::vector<TrustScore>& scores);

// Unnormalised pair trust; each field lies in (0, 2).
struct PairTrust {
  MemberId a;
  MemberId b;
  ContextId context;
  double popularity_pair;
  double engagement_pair;
  double social_pair;
  Alpha alpha;
};

// Throws SamePair, UnknownMember, UnknownContext.
PairTrust pair_trust(const InteractionStore& store, const MemberId& a, const MemberId& b,
                     const ContextId& context, Alpha alpha);

}  // namespace strust
