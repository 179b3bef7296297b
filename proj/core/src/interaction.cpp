#include "strust/interaction.hpp"

#include <cmath>

#include "strust/error.hpp"

namespace strust {

std::string_view to_string(InteractionKind kind) noexcept {
  return kind == InteractionKind::active ? "active" : "passive";
}

std::string_view to_string(Polarity polarity) noexcept {
  return polarity == Polarity::positive ? "positive" : "negative";
}

std::optional<InteractionKind> parse_kind(std::string_view text) noexcept {
  if (text == "active" || text == "a") return InteractionKind::active;
  if (text == "passive" || text == "p") return InteractionKind::passive;
  return std::nullopt;
}

std::optional<Polarity> parse_polarity(std::string_view text) noexcept {
  if (text == "positive" || text == "+" || text == "1" || text == "+1") return Polarity::positive;
  if (text == "negative" || text == "-" || text == "-1") return Polarity::negative;
  return std::nullopt;
}

void validate(const Interaction& event) {
  if (event.source == event.target) throw SelfInteraction(event.source.str());
  if (event.kind == InteractionKind::passive && event.polarity == Polarity::negative) {
    throw NegativePassive();
  }
  if (event.weight == 0) throw InvalidArgument("interaction weight must be positive");
  if (event.timestamp && (!std::isfinite(*event.timestamp) || *event.timestamp < 0.0)) {
    throw InvalidArgument("interaction timestamp must be a finite non-negative number");
  }
}

}  // namespace strust
