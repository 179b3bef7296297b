#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "strust/interaction_store.hpp"
#include "strust/trust_engine.hpp"

namespace strust {

// Which trust value a ranking orders by. Social carries its own alpha.
class TrustKind {
 public:
  enum class Type { popularity, engagement, social };

  static TrustKind popularity() { return TrustKind(Type::popularity, Alpha(1.0)); }
  static TrustKind engagement() { return TrustKind(Type::engagement, Alpha(0.0)); }
  static TrustKind social(Alpha alpha) { return TrustKind(Type::social, alpha); }
  // "popularity", "engagement", "social" (uses `social_alpha`). Throws InvalidArgument.
  static TrustKind parse(const std::string& name, Alpha social_alpha);

  Type type() const noexcept { return type_; }
  Alpha alpha() const noexcept { return alpha_; }
  // "popularity", "engagement" or "social".
  std::string name() const;
  // "social@0.5" style label that includes alpha for social rankings.
  std::string label() const;
  double score(const TrustScore& s) const noexcept;

  friend bool operator==(const TrustKind&, const TrustKind&) = default;

 private:
  TrustKind(Type type, Alpha alpha) : type_(type), alpha_(alpha) {}
  Type type_;
  Alpha alpha_;
};

struct RankingEntry {
  MemberId member;
  double score;
  std::size_t rank;  // 1-based
};

// Every member exactly once, score descending, ties by ascending MemberId.
struct Ranking {
  TrustKind kind;
  std::vector<RankingEntry> entries;

  std::vector<MemberId> top(std::size_t n) const;
  std::optional<std::size_t> rank_of(const MemberId& member) const;
};

Ranking rank(const InteractionStore& store, TrustKind kind, TrustOptions options = {});
// Orders precomputed scores; `scores` must cover the store's members.
Ranking rank_scores(const std::vector<TrustScore>& scores, TrustKind kind);

// Leaders: top-k by popularity. Mentors: top-k by social trust at
// `mentor_alpha` (0 by default, i.e. pure engagement). Throw KOutOfRange
// unless 1 <= k <= |M|.
std::vector<MemberId> recommend_leaders(const InteractionStore& store, std::size_t k,
                                        TrustOptions options = {});
std::vector<MemberId> recommend_mentors(const InteractionStore& store, std::size_t k,
                                        Alpha mentor_alpha = Alpha(0.0), TrustOptions options = {});

struct OverlapPoint {
  std::size_t k;
  std::size_t overlap;
  std::vector<MemberId> leader_set;
  std::vector<MemberId> mentor_set;
};

// One point per k = 1..k_max. Throws KOutOfRange unless 1 <= k_max <= |M|.
std::vector<OverlapPoint> topk_overlap(const InteractionStore& store, std::size_t k_max,
                                       TrustOptions options = {});

// round-half-up(percent * |M| / 100).
std::size_t removal_count(double percent, std::size_t member_count);

struct UniqueElimination {
  std::size_t n;  // members taken from the top of each ranking
  std::size_t unique_count;
  std::vector<MemberId> set_a;  // ranking order
  std::vector<MemberId> set_b;
  std::vector<MemberId> unique_members;  // sorted
};

// Symmetric difference of the two top-n sets, n = removal_count(percent).
// Throws KOutOfRange when percent is outside (0, 100) or n is 0 or > |M|.
UniqueElimination unique_eliminations(const InteractionStore& store, TrustKind kind_a,
                                      TrustKind kind_b, double percent, TrustOptions options = {});

enum class EgoMode { engagement, popularity };

struct EgoEdge {
  MemberId source;
  MemberId target;
  DirectedCounts counts;  // summed over contexts
};

struct EgoNetwork {
  MemberId center;
  EgoMode mode;
  std::vector<MemberId> nodes;  // center first, then peers in member order
  std::vector<EgoEdge> edges;
};

// Engagement mode: the member and every target of its initiated events, with
// outward edges. Popularity mode: every initiator of events it received, with
// inward edges. Throws UnknownMember.
EgoNetwork ego_network(const InteractionStore& store, const MemberId& member, EgoMode mode);

std::string to_string(EgoMode mode);
// Throws InvalidArgument.
EgoMode parse_ego_mode(const std::string& text);

// Plain DOT digraph, no layout attributes. `header_comment` lines are emitted
// as // comments before the graph.
std::string to_dot(const EgoNetwork& ego, const std::vector<std::string>& header_comment = {});

// CSV bodies with a header row: `member,score,rank` and `k,overlap`.
std::string ranking_csv(const Ranking& ranking);
std::string ranking_csv(const Ranking& ranking, std::size_t limit);
std::string overlap_csv(const std::vector<OverlapPoint>& points);

}  // namespace strust
