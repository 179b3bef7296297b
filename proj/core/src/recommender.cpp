#include "strust/recommender.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "strust/error.hpp"

namespace strust {
namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void require_k(std::size_t k, std::size_t member_count) {
  if (k < 1 || k > member_count) throw KOutOfRange(static_cast<long long>(k), member_count);
}

}  // namespace

TrustKind TrustKind::parse(const std::string& name, Alpha social_alpha) {
  if (name == "popularity") return popularity();
  if (name == "engagement") return engagement();
  if (name == "social") return social(social_alpha);
  throw InvalidArgument(fmt::format("unknown trust kind '{}'", name));
}

std::string TrustKind::name() const {
  switch (type_) {
    case Type::popularity: return "popularity";
    case Type::engagement: return "engagement";
    case Type::social: return "social";
  }
  return "?";
}

std::string TrustKind::label() const {
  if (type_ == Type::social) return fmt::format("social@{}", alpha_.value());
  return name();
}

double TrustKind::score(const TrustScore& s) const noexcept {
  switch (type_) {
    case Type::popularity: return s.popularity;
    case Type::engagement: return s.engagement;
    case Type::social: break;
  }
  return alpha_.value() * s.popularity + (1.0 - alpha_.value()) * s.engagement;
}

std::vector<MemberId> Ranking::top(std::size_t n) const {
  std::vector<MemberId> out;
  out.reserve(std::min(n, entries.size()));
  for (std::size_t i = 0; i < n && i < entries.size(); ++i) out.push_back(entries[i].member);
  return out;
}

std::optional<std::size_t> Ranking::rank_of(const MemberId& member) const {
  for (const auto& e : entries) {
    if (e.member == member) return e.rank;
  }
  return std::nullopt;
}

Ranking rank_scores(const std::vector<TrustScore>& scores, TrustKind kind) {
  Ranking ranking{kind, {}};
  ranking.entries.reserve(scores.size());
  for (const auto& s : scores) ranking.entries.push_back({s.member, kind.score(s), 0});
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankingEntry& a, const RankingEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.member < b.member;
            });
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) ranking.entries[i].rank = i + 1;
  return ranking;
}

Ranking rank(const InteractionStore& store, TrustKind kind, TrustOptions options) {
  return rank_scores(score_all(store, kind.alpha(), options), kind);
}

std::vector<MemberId> recommend_leaders(const InteractionStore& store, std::size_t k,
                                        TrustOptions options) {
  require_k(k, store.member_count());
  return rank(store, TrustKind::popularity(), options).top(k);
}

std::vector<MemberId> recommend_mentors(const InteractionStore& store, std::size_t k,
                                        Alpha mentor_alpha, TrustOptions options) {
  require_k(k, store.member_count());
  const auto kind =
      mentor_alpha.value() == 0.0 ? TrustKind::engagement() : TrustKind::social(mentor_alpha);
  return rank(store, kind, options).top(k);
}

std::vector<OverlapPoint> topk_overlap(const InteractionStore& store, std::size_t k_max,
                                       TrustOptions options) {
  require_k(k_max, store.member_count());
  const auto scores = score_all(store, Alpha(0.5), options);
  const auto leaders = rank_scores(scores, TrustKind::popularity());
  const auto mentors = rank_scores(scores, TrustKind::engagement());

  std::vector<OverlapPoint> points;
  points.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    OverlapPoint p{k, 0, leaders.top(k), mentors.top(k)};
    auto a = p.leader_set;
    auto b = p.mentor_set;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<MemberId> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    p.overlap = both.size();
    points.push_back(std::move(p));
  }
  return points;
}

std::size_t removal_count(double percent, std::size_t member_count) {
  return static_cast<std::size_t>(
      std::floor(percent * static_cast<double>(member_count) / 100.0 + 0.5));
}

UniqueElimination unique_eliminations(const InteractionStore& store, TrustKind kind_a,
                                      TrustKind kind_b, double percent, TrustOptions options) {
  const auto members = store.member_count();
  if (!(percent > 0.0 && percent < 100.0)) throw KOutOfRange(0, members);
  const auto n = removal_count(percent, members);
  if (n == 0 || n > members) throw KOutOfRange(static_cast<long long>(n), members);

  UniqueElimination result{n, 0, rank(store, kind_a, options).top(n),
                           rank(store, kind_b, options).top(n), {}};
  auto a = result.set_a;
  auto b = result.set_b;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(result.unique_members));
  result.unique_count = result.unique_members.size();
  return result;
}

std::string to_string(EgoMode mode) {
  return mode == EgoMode::engagement ? "engagement" : "popularity";
}

EgoMode parse_ego_mode(const std::string& text) {
  if (text == "engagement") return EgoMode::engagement;
  if (text == "popularity") return EgoMode::popularity;
  throw InvalidArgument(fmt::format("unknown ego mode '{}'", text));
}

EgoNetwork ego_network(const InteractionStore& store, const MemberId& member, EgoMode mode) {
  const auto center = store.require_member(member);
  std::vector<DirectedCounts> per_peer(store.member_count());
  std::vector<bool> linked(store.member_count(), false);
  for (std::size_t c = 0; c < store.context_count(); ++c) {
    const auto links =
        mode == EgoMode::engagement ? store.outgoing(center, c) : store.incoming(center, c);
    for (const auto& link : links) {
      linked[link.peer] = true;
      per_peer[link.peer].positive += link.counts.positive;
      per_peer[link.peer].negative += link.counts.negative;
    }
  }
  EgoNetwork ego{member, mode, {member}, {}};
  const auto members = store.members();
  for (std::size_t peer = 0; peer < members.size(); ++peer) {
    if (!linked[peer]) continue;
    ego.nodes.push_back(members[peer]);
    if (mode == EgoMode::engagement) {
      ego.edges.push_back({member, members[peer], per_peer[peer]});
    } else {
      ego.edges.push_back({members[peer], member, per_peer[peer]});
    }
  }
  return ego;
}

std::string to_dot(const EgoNetwork& ego, const std::vector<std::string>& header_comment) {
  std::string out;
  for (const auto& line : header_comment) out += fmt::format("// {}\n", line);
  out += fmt::format("digraph {} {{\n", dot_quote(fmt::format("ego_{}_{}", ego.center.str(),
                                                              to_string(ego.mode))));
  for (const auto& node : ego.nodes) out += fmt::format("  {};\n", dot_quote(node.str()));
  for (const auto& e : ego.edges) {
    out += fmt::format("  {} -> {} [positive={}, negative={}];\n", dot_quote(e.source.str()),
                       dot_quote(e.target.str()), e.counts.positive, e.counts.negative);
  }
  out += "}\n";
  return out;
}

std::string ranking_csv(const Ranking& ranking, std::size_t limit) {
  std::string out = "member,score,rank\n";
  for (std::size_t i = 0; i < ranking.entries.size() && i < limit; ++i) {
    const auto& e = ranking.entries[i];
    out += fmt::format("{},{:.17g},{}\n", e.member.str(), e.score, e.rank);
  }
  return out;
}

std::string ranking_csv(const Ranking& ranking) {
  return ranking_csv(ranking, ranking.entries.size());
}

std::string overlap_csv(const std::vector<OverlapPoint>& points) {
  std::string out = "k,overlap\n";
  for (const auto& p : points) out += fmt::format("{},{}\n", p.k, p.overlap);
  return out;
}

}  // namespace strust
