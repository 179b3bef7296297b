#include "strust/interaction_store.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "strust/error.hpp"

namespace strust {

struct InteractionStore::State {
  std::vector<MemberId> members;
  std::unordered_map<MemberId, std::size_t> member_index;
  std::vector<ContextId> contexts;
  std::vector<ContextId> declared_contexts;
  std::vector<Interaction> ledger;
  StoreMetadata metadata;
  SocialCapital capital;

  // CSR adjacency keyed by context * |M| + member.
  std::vector<std::size_t> out_offsets;
  std::vector<Link> out_links;
  std::vector<std::size_t> in_offsets;
  std::vector<Link> in_links;

  std::size_t slot(std::size_t member, std::size_t context) const {
    return context * members.size() + member;
  }
};

namespace {

struct Entry {
  std::size_t context;
  std::size_t from;
  std::size_t to;
  DirectedCounts counts;
};

// Merges entries that share (context, from, to); input must be sorted on those keys.
std::vector<Entry> merge_sorted(const std::vector<Entry>& sorted) {
  std::vector<Entry> merged;
  for (const auto& e : sorted) {
    if (!merged.empty() && merged.back().context == e.context && merged.back().from == e.from &&
        merged.back().to == e.to) {
      merged.back().counts.positive += e.counts.positive;
      merged.back().counts.negative += e.counts.negative;
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

// Builds CSR arrays from entries sorted by (context, from, to).
void build_csr(const std::vector<Entry>& entries, std::size_t member_count,
               std::size_t context_count, std::vector<std::size_t>& offsets,
               std::vector<InteractionStore::Link>& links) {
  offsets.assign(member_count * context_count + 1, 0);
  for (const auto& e : entries) ++offsets[e.context * member_count + e.from + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  links.clear();
  links.reserve(entries.size());
  for (const auto& e : entries) links.push_back({e.to, e.counts});
}

}  // namespace

InteractionStore::InteractionStore() : InteractionStore(from_ledger({})) {}

InteractionStore::InteractionStore(std::shared_ptr<const State> state) : state_(std::move(state)) {}

InteractionStore InteractionStore::from_ledger(std::vector<Interaction> ledger,
                                               std::vector<MemberId> extra_members,
                                               StoreMetadata metadata,
                                               std::vector<ContextId> declared_contexts) {
  auto state = std::make_shared<State>();

  std::vector<MemberId> members = std::move(extra_members);
  std::vector<ContextId> contexts = declared_contexts;
  members.reserve(members.size() + 2 * ledger.size());
  for (const auto& event : ledger) {
    validate(event);
    members.push_back(event.source);
    members.push_back(event.target);
    contexts.push_back(event.context);
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::sort(contexts.begin(), contexts.end());
  contexts.erase(std::unique(contexts.begin(), contexts.end()), contexts.end());
  if (contexts.empty()) contexts.push_back(ContextId::global());

  state->member_index.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) state->member_index.emplace(members[i], i);
  std::unordered_map<ContextId, std::size_t> context_index;
  for (std::size_t i = 0; i < contexts.size(); ++i) context_index.emplace(contexts[i], i);

  std::vector<Entry> entries;
  entries.reserve(ledger.size());
  for (const auto& event : ledger) {
    Entry e{context_index.at(event.context), state->member_index.at(event.source),
            state->member_index.at(event.target), {}};
    if (event.polarity == Polarity::positive) {
      e.counts.positive = event.weight;
      state->capital.total += event.weight;
    } else {
      e.counts.negative = event.weight;
    }
    entries.push_back(e);
  }

  const auto by_from = [](const Entry& a, const Entry& b) {
    return std::tie(a.context, a.from, a.to) < std::tie(b.context, b.from, b.to);
  };
  std::sort(entries.begin(), entries.end(), by_from);
  auto outgoing = merge_sorted(entries);

  std::vector<std::pair<std::size_t, std::size_t>> positive_pairs;
  for (const auto& e : outgoing) {
    if (e.counts.positive > 0) positive_pairs.emplace_back(e.from, e.to);
  }
  std::sort(positive_pairs.begin(), positive_pairs.end());
  state->capital.unique = static_cast<std::uint64_t>(
      std::unique(positive_pairs.begin(), positive_pairs.end()) - positive_pairs.begin());

  auto incoming = outgoing;
  for (auto& e : incoming) std::swap(e.from, e.to);
  std::sort(incoming.begin(), incoming.end(), by_from);

  build_csr(outgoing, members.size(), contexts.size(), state->out_offsets, state->out_links);
  build_csr(incoming, members.size(), contexts.size(), state->in_offsets, state->in_links);

  state->members = std::move(members);
  state->contexts = std::move(contexts);
  std::sort(declared_contexts.begin(), declared_contexts.end());
  declared_contexts.erase(std::unique(declared_contexts.begin(), declared_contexts.end()),
                          declared_contexts.end());
  state->declared_contexts = std::move(declared_contexts);
  state->ledger = std::move(ledger);
  state->metadata = std::move(metadata);
  return InteractionStore(std::move(state));
}

InteractionStore InteractionStore::with_interaction(const Interaction& event) const {
  validate(event);
  auto ledger = state_->ledger;
  ledger.push_back(event);
  return from_ledger(std::move(ledger), state_->members, state_->metadata,
                     state_->declared_contexts);
}

InteractionStore InteractionStore::with_metadata(StoreMetadata metadata) const {
  auto state = std::make_shared<State>(*state_);
  state->metadata = std::move(metadata);
  return InteractionStore(std::move(state));
}

std::span<const MemberId> InteractionStore::members() const noexcept { return state_->members; }
std::span<const ContextId> InteractionStore::contexts() const noexcept { return state_->contexts; }
std::span<const Interaction> InteractionStore::ledger() const noexcept { return state_->ledger; }
const StoreMetadata& InteractionStore::metadata() const noexcept { return state_->metadata; }

bool InteractionStore::contains(const MemberId& member) const noexcept {
  return state_->member_index.contains(member);
}

std::optional<std::size_t> InteractionStore::index_of(const MemberId& member) const noexcept {
  const auto it = state_->member_index.find(member);
  if (it == state_->member_index.end()) return std::nullopt;
  return it->second;
}

std::size_t InteractionStore::require_member(const MemberId& member) const {
  const auto idx = index_of(member);
  if (!idx) throw UnknownMember(member.str());
  return *idx;
}

std::optional<std::size_t> InteractionStore::require_context(const ContextId& context) const {
  const auto& ctx = state_->contexts;
  const auto it = std::lower_bound(ctx.begin(), ctx.end(), context);
  if (it != ctx.end() && *it == context) return static_cast<std::size_t>(it - ctx.begin());
  if (context.is_global()) return std::nullopt;
  throw UnknownContext(context.str());
}

DirectedCounts InteractionStore::directed_counts(const MemberId& receiver,
                                                 const MemberId& initiator,
                                                 const ContextId& context) const {
  const auto to = require_member(receiver);
  const auto from = require_member(initiator);
  const auto ctx = require_context(context);
  if (!ctx) return {};
  const auto links = outgoing(from, *ctx);
  const auto it = std::lower_bound(links.begin(), links.end(), to,
                                   [](const Link& l, std::size_t peer) { return l.peer < peer; });
  if (it == links.end() || it->peer != to) return {};
  return it->counts;
}

SocialCapital InteractionStore::social_capital() const noexcept { return state_->capital; }

std::span<const InteractionStore::Link> InteractionStore::incoming(std::size_t member,
                                                                   std::size_t context) const {
  const auto s = state_->slot(member, context);
  return std::span(state_->in_links).subspan(state_->in_offsets[s],
                                              state_->in_offsets[s + 1] - state_->in_offsets[s]);
}

std::span<const InteractionStore::Link> InteractionStore::outgoing(std::size_t member,
                                                                   std::size_t context) const {
  const auto s = state_->slot(member, context);
  return std::span(state_->out_links).subspan(state_->out_offsets[s],
                                               state_->out_offsets[s + 1] - state_->out_offsets[s]);
}

bool InteractionStore::active_in(std::size_t member, std::size_t context) const {
  return !incoming(member, context).empty() || !outgoing(member, context).empty();
}

}  // namespace strust
