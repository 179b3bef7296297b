#include "strust/member_id.hpp"

#include <algorithm>

#include "strust/error.hpp"

namespace strust {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_zeros(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(first);
}

}  // namespace

MemberId::MemberId(std::string token) : token_(std::move(token)) {
  if (token_.empty()) throw InvalidArgument("member id must be non-empty");
}

std::strong_ordering operator<=>(const MemberId& a, const MemberId& b) noexcept {
  const bool a_num = all_digits(a.token_);
  const bool b_num = all_digits(b.token_);
  if (a_num != b_num) return a_num ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a_num) {
    const auto av = strip_zeros(a.token_);
    const auto bv = strip_zeros(b.token_);
    if (av.size() != bv.size()) return av.size() <=> bv.size();
    if (const auto c = av.compare(bv); c != 0) return c <=> 0;
  }
  return a.token_.compare(b.token_) <=> 0;
}

ContextId::ContextId(std::string token) : token_(std::move(token)) {
  if (token_.empty()) throw InvalidArgument("context id must be non-empty");
}

}  // namespace strust
