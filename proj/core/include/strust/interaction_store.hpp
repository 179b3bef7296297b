#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strust/interaction.hpp"
#include "strust/member_id.hpp"

namespace strust {

struct DirectedCounts {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;

  friend bool operator==(const DirectedCounts&, const DirectedCounts&) = default;
};

// Total positive interactions (weights expanded) and distinct ordered
// (source, target) pairs with at least one positive interaction.
struct SocialCapital {
  std::uint64_t total = 0;
  std::uint64_t unique = 0;

  friend bool operator==(const SocialCapital&, const SocialCapital&) = default;
};

struct StoreMetadata {
  std::string source_file;
  std::string format;
  std::optional<std::string> projection_rule;

  friend bool operator==(const StoreMetadata&, const StoreMetadata&) = default;
};

// Immutable interaction ledger plus the member set M and context set X.
//
// Members and contexts are kept in canonical sorted order and addressed by
// dense indices; the per-context adjacency is built once at construction so
// trust queries never rescan the ledger. Copies share the same immutable
// state and are safe to read concurrently.
//
// The context set is every context that appears in the ledger plus any
// declared ones; a store with no contexts at all uses {"global"}.
class InteractionStore {
 public:
  // Aggregated directed counts toward or from `peer` (a member index).
  struct Link {
    std::size_t peer;
    DirectedCounts counts;
  };

  InteractionStore();

  // Validates every event (see strust::validate). `extra_members` are added
  // to M even when they never appear in the ledger.
  static InteractionStore from_ledger(std::vector<Interaction> ledger,
                                      std::vector<MemberId> extra_members = {},
                                      StoreMetadata metadata = {},
                                      std::vector<ContextId> declared_contexts = {});

  // Value-semantics append: `*this` is left untouched.
  InteractionStore with_interaction(const Interaction& event) const;
  InteractionStore with_metadata(StoreMetadata metadata) const;

  std::span<const MemberId> members() const noexcept;
  std::span<const ContextId> contexts() const noexcept;
  std::span<const Interaction> ledger() const noexcept;
  const StoreMetadata& metadata() const noexcept;

  std::size_t member_count() const noexcept { return members().size(); }
  std::size_t context_count() const noexcept { return contexts().size(); }

  bool contains(const MemberId& member) const noexcept;
  std::optional<std::size_t> index_of(const MemberId& member) const noexcept;
  // Throws UnknownMember.
  std::size_t require_member(const MemberId& member) const;
  // Index of `context` in contexts(), nullopt for "global" when the store
  // has no such context. Throws UnknownContext for anything else.
  std::optional<std::size_t> require_context(const ContextId& context) const;

  // Events initiator -> receiver in `context`, weights expanded. The same
  // numbers are the popularity counts of the receiver and the engagement
  // counts of the initiator.
  DirectedCounts directed_counts(const MemberId& receiver, const MemberId& initiator,
                                 const ContextId& context) const;

  SocialCapital social_capital() const noexcept;

  // Index-level adjacency, each span sorted by peer index.
  std::span<const Link> incoming(std::size_t member, std::size_t context) const;
  std::span<const Link> outgoing(std::size_t member, std::size_t context) const;
  // True when the member has any ledger presence (either direction) in the context.
  bool active_in(std::size_t member, std::size_t context) const;

 private:
  struct State;
  explicit InteractionStore(std::shared_ptr<const State> state);

  std::shared_ptr<const State> state_;
};

}  // namespace strust
