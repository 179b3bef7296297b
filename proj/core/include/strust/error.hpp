#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strust {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SelfInteraction : public Error {
 public:
  explicit SelfInteraction(const std::string& member);
};

class NegativePassive : public Error {
 public:
  NegativePassive();
};

class UnknownMember : public Error {
 public:
  explicit UnknownMember(const std::string& member);
  const std::string& member() const noexcept { return member_; }

 private:
  std::string member_;
};

class UnknownContext : public Error {
 public:
  explicit UnknownContext(const std::string& context);
};

class SamePair : public Error {
 public:
  explicit SamePair(const std::string& member);
};

class KOutOfRange : public Error {
 public:
  KOutOfRange(long long k, std::size_t member_count);
};

// Malformed input line. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason);
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class EmptyInput : public Error {
 public:
  EmptyInput();
};

class MissingOrder : public Error {
 public:
  explicit MissingOrder(const std::string& detail);
};

// Canonical store JSON could not be decoded.
class StoreFormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace strust
