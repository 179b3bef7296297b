#include "strust/error.hpp"

#include <fmt/format.h>

namespace strust {

SelfInteraction::SelfInteraction(const std::string& member)
    : Error(fmt::format("self-interaction on member '{}'", member)) {}

NegativePassive::NegativePassive()
    : Error("passive interactions must have positive polarity") {}

UnknownMember::UnknownMember(const std::string& member)
    : Error(fmt::format("unknown member '{}'", member)), member_(member) {}

UnknownContext::UnknownContext(const std::string& context)
    : Error(fmt::format("unknown context '{}'", context)) {}

SamePair::SamePair(const std::string& member)
    : Error(fmt::format("pair trust needs two distinct members, got '{}' twice", member)) {}

KOutOfRange::KOutOfRange(long long k, std::size_t member_count)
    : Error(fmt::format("k = {} is outside [1, {}]", k, member_count)) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : Error(fmt::format("line {}: {}", line, reason)), line_(line), reason_(reason) {}

EmptyInput::EmptyInput() : Error("input contains no interaction records") {}

MissingOrder::MissingOrder(const std::string& detail)
    : Error(fmt::format("prior-posters projection needs a post order: {}", detail)) {}

}  // namespace strust
