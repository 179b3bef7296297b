#include "strust/trust_engine.hpp"

#include <cmath>
#include <optional>

#include "strust/error.hpp"

namespace strust {
namespace {

enum class Direction { received, initiated };

// Per-context trust of member `idx`. Links are summed in peer order, then the
// members with no events in this context add their 0.5 bootstrap terms.
double context_value(const InteractionStore& store, std::size_t idx,
                     std::optional<std::size_t> context, Direction direction) {
  const std::size_t n = store.member_count();
  if (n <= 1 || !context) return kBootstrapTrust;
  const auto links = direction == Direction::received ? store.incoming(idx, *context)
                                                      : store.outgoing(idx, *context);
  double sum = 0.0;
  for (const auto& link : links) sum += beta_mean(link.counts.positive, link.counts.negative);
  sum += kBootstrapTrust * static_cast<double>(n - 1 - links.size());
  return sum / static_cast<double>(n - 1);
}

double aggregate(const InteractionStore& store, std::size_t idx, Direction direction,
                 TrustOptions options) {
  const std::size_t contexts = store.context_count();
  double sum = 0.0;
  std::size_t used = 0;
  if (options.aggregation == ContextAggregation::member_contexts) {
    for (std::size_t c = 0; c < contexts; ++c) {
      if (!store.active_in(idx, c)) continue;
      sum += context_value(store, idx, c, direction);
      ++used;
    }
  }
  if (used == 0) {
    sum = 0.0;
    for (std::size_t c = 0; c < contexts; ++c) sum += context_value(store, idx, c, direction);
    used = contexts;
  }
  return sum / static_cast<double>(used);
}

double blend(Alpha alpha, double popularity, double engagement) {
  return alpha.value() * popularity + (1.0 - alpha.value()) * engagement;
}

TrustScore score_index(const InteractionStore& store, std::size_t idx, Alpha alpha,
                       TrustOptions options) {
  const double pop = aggregate(store, idx, Direction::received, options);
  const double eng = aggregate(store, idx, Direction::initiated, options);
  return TrustScore{store.members()[idx], pop, eng, blend(alpha, pop, eng), alpha,
                    store.member_count() <= 1};
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
}

double beta_mean(std::uint64_t positive, std::uint64_t negative) noexcept {
  return (static_cast<double>(positive) + 1.0) /
         (static_cast<double>(positive) + static_cast<double>(negative) + 2.0);
}

double pop_trust_context(const InteractionStore& store, const MemberId& member,
                         const ContextId& context) {
  const auto idx = store.require_member(member);
  return context_value(store, idx, store.require_context(context), Direction::received);
}

double eng_trust_context(const InteractionStore& store, const MemberId& member,
                         const ContextId& context) {
  const auto idx = store.require_member(member);
  return context_value(store, idx, store.require_context(context), Direction::initiated);
}

double pop_trust(const InteractionStore& store, const MemberId& member, TrustOptions options) {
  return aggregate(store, store.require_member(member), Direction::received, options);
}

double eng_trust(const InteractionStore& store, const MemberId& member, TrustOptions options) {
  return aggregate(store, store.require_member(member), Direction::initiated, options);
}

TrustScore strust_member(const InteractionStore& store, const MemberId& member, Alpha alpha,
                         TrustOptions options) {
  return score_index(store, store.require_member(member), alpha, options);
}

std::vector<TrustScore> score_all(const InteractionStore& store, Alpha alpha,
                                  TrustOptions options) {
  std::vector<TrustScore> scores;
  scores.reserve(store.member_count());
  for (std::size_t i = 0; i < store.member_count(); ++i) {
    scores.push_back(score_index(store, i, alpha, options));
  }
  return scores;
}

CommunityTrust community_from_scores(const std::vector<TrustScore>& scores) {
  if (scores.empty()) return {kBootstrapTrust, false, true};
  double sum = 0.0;
  for (const auto& s : scores) sum += s.social;
  const double value = sum / static_cast<double>(scores.size());
  return {value, value > kBootstrapTrust, scores.size() <= 1};
}

CommunityTrust strust_community(const InteractionStore& store, Alpha alpha, TrustOptions options) {
  return community_from_scores(score_all(store, alpha, options));
}

PairTrust pair_trust(const InteractionStore& store, const MemberId& a, const MemberId& b,
                     const ContextId& context, Alpha alpha) {
  if (a == b) throw SamePair(a.str());
  const auto a_from_b = store.directed_counts(a, b, context);
  const auto b_from_a = store.directed_counts(b, a, context);
  // Popularity of a is fed by b -> a; engagement of a by a -> b.
  const double popularity = beta_mean(a_from_b.positive, a_from_b.negative) +
                            beta_mean(b_from_a.positive, b_from_a.negative);
  const double engagement = beta_mean(b_from_a.positive, b_from_a.negative) +
                            beta_mean(a_from_b.positive, a_from_b.negative);
  return PairTrust{a, b, context, popularity, engagement, blend(alpha, popularity, engagement),
                   alpha};
}

}  // namespace strust
