#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace simplicity {

// Base class for all recoverable errors raised by the library. CLI maps these
// to exit code 2 (usage/static errors), as opposed to runtime evaluation
// failure (Bottom), which is reported as a value and maps to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Static typing failures. `node` is the index of the offending dag node when
// one can be pinpointed (otherwise the root).
class TypeError : public Error {
 public:
  enum class Kind {
    UnificationClash,  // structural mismatch between required types
    OccursCheck,       // infinite type required
    RuleViolation,     // explicit annotation violates a typing rule
    TypeMismatch,      // runtime value does not inhabit the required type
    NotCore,           // extended/assertion node where core-only was required
    MissingWitness,    // witness placeholder present where a value is needed
  };

  TypeError(Kind kind, uint32_t node, const std::string& msg)
      : Error(msg), kind(kind), node(node) {}

  Kind kind;
  uint32_t node;
};

// Text syntax errors, with 1-based source position.
class ParseError : public Error {
 public:
  ParseError(size_t line, size_t col, const std::string& msg)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}

  size_t line;
  size_t col;
};

// Precondition violations on sizes/widths/indices.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// A construction was asked to enumerate or materialize something beyond its
// documented size guard (e.g. lookup-table domains above 2^16 values).
class TooLarge : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

// A cell string does not decode to a value of the requested type.
class MalformedCells : public Error {
 public:
  using Error::Error;
};

// An operation needed a successful evaluation, but the program evaluated to
// bottom (e.g. pruning a program that fails on the given input).
class EvaluationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace simplicity
