#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "strust/member_id.hpp"

namespace strust {

enum class InteractionKind { active, passive };
enum class Polarity { positive, negative };

std::string_view to_string(InteractionKind kind) noexcept;
std::string_view to_string(Polarity polarity) noexcept;
std::optional<InteractionKind> parse_kind(std::string_view text) noexcept;
std::optional<Polarity> parse_polarity(std::string_view text) noexcept;

// One directed event. It feeds the engagement of `source` and the popularity
// of `target`. A record with weight w stands for w identical events.
struct Interaction {
  MemberId source;
  MemberId target;
  ContextId context{};
  InteractionKind kind = InteractionKind::active;
  Polarity polarity = Polarity::positive;
  std::optional<double> timestamp{};
  std::uint64_t weight = 1;

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

// Throws SelfInteraction, NegativePassive, or InvalidArgument (zero weight,
// negative or non-finite timestamp).
void validate(const Interaction& event);

}  // namespace strust
