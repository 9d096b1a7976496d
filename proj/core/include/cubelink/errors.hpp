#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace cubelink {

/// Caller supplied an argument outside an operation's contract.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal guarantee did not hold. Always a bug in this library, never a
/// property of the input; `instance()` carries a replayable dump when known.
class InvariantFailure : public std::logic_error {
 public:
  explicit InvariantFailure(const std::string& message, std::string instance = {})
      : std::logic_error("invariant failure: " + message),
        detail_(message),
        instance_(std::move(instance)) {}

  /// The message without the "invariant failure: " prefix.
  const std::string& detail() const noexcept { return detail_; }
  const std::string& instance() const noexcept { return instance_; }

 private:
  std::string detail_;
  std::string instance_;
};

/// Malformed textual input (vertex strings, face patterns, JSON documents).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cubelink
