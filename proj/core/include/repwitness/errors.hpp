#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace repwitness {

/// Malformed textual input (words, presentation files). Carries the byte
/// offset where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        message_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// An operation was called outside its domain: rank mismatch, wrong arity,
/// nonzero abelianization where a commutator word is required, and so on.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The hypotheses of an existence theorem do not hold for the given input.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A self-check failed. Seeing one of these is a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace repwitness
