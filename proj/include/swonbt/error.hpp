#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swonbt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class ModelErrorKind {
  Empty,
  MultipleRoots,
  Cycle,
  UnreachableState,
  DuplicateStateId,
  UnknownParent,
  Format,
};

class ModelError : public Error {
 public:
  ModelError(ModelErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  ModelErrorKind kind() const noexcept { return kind_; }

 private:
  ModelErrorKind kind_;
};

enum class ContextErrorKind {
  UnknownTimeline,
  UnknownRule,
  DuplicateRuleName,
  Reflexive,
  UndefeatableNotMaximal,
  EmptyAccepted,
  Format,
};

class ContextError : public Error {
 public:
  ContextError(ContextErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  ContextErrorKind kind() const noexcept { return kind_; }

 private:
  ContextErrorKind kind_;
};

// Raised when a pointed model violates its own invariants (timeline outside
// the accepted set, expected not a subset of accepted, ...).
class PointError : public Error {
 public:
  using Error::Error;
};

class FragmentError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class CombinatorialLimit : public Error {
 public:
  using Error::Error;
};

class BoundsTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace swonbt
