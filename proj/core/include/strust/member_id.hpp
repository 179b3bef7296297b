#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace strust {

// Opaque member token. Ordering is numeric-aware: all-digit tokens sort by
// value and come before any other token, so "9" < "10" < "alice".
class MemberId {
 public:
  explicit MemberId(std::string token);

  const std::string& str() const noexcept { return token_; }

  friend std::strong_ordering operator<=>(const MemberId& a, const MemberId& b) noexcept;
  friend bool operator==(const MemberId& a, const MemberId& b) noexcept {
    return a.token_ == b.token_;
  }

 private:
  std::string token_;
};

class ContextId {
 public:
  static constexpr std::string_view kGlobal = "global";

  ContextId() : token_(kGlobal) {}
  explicit ContextId(std::string token);

  static ContextId global() { return ContextId(); }

  const std::string& str() const noexcept { return token_; }
  bool is_global() const noexcept { return token_ == kGlobal; }

  friend auto operator<=>(const ContextId&, const ContextId&) = default;
  friend bool operator==(const ContextId&, const ContextId&) = default;

 private:
  std::string token_;
};

}  // namespace strust

template <>
struct std::hash<strust::MemberId> {
  std::size_t operator()(const strust::MemberId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

template <>
struct std::hash<strust::ContextId> {
  std::size_t operator()(const strust::ContextId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
