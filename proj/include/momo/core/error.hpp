#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace momo {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Vectors of incompatible lengths.
class DimensionError : public Error {
public:
  using Error::Error;
};

// An operation was invoked on an object in the wrong state (e.g. unevaluated solution).
class StateError : public Error {
public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// Invalid configuration. Carries the source line when parsed from a file.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : Error(line ? what + " (line " + std::to_string(*line) + ")" : what), line_(line) {}

  std::optional<std::size_t> line() const noexcept { return line_; }

private:
  std::optional<std::size_t> line_;
};

// Objective evaluation failed for the solution at `index` of the evaluated batch.
class EvaluationError : public Error {
public:
  EvaluationError(const std::string& what, std::size_t index)
      : Error(what + " (solution " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }
  std::optional<std::size_t> generation() const noexcept { return generation_; }

  // Same failure annotated with the generation in which it happened.
  EvaluationError at_generation(std::size_t g) const {
    EvaluationError e(*this);
    static_cast<Error&>(e) = Error("generation " + std::to_string(g) + ": " + what());
    e.generation_ = g;
    return e;
  }

private:
  std::size_t index_;
  std::optional<std::size_t> generation_;
};

} // namespace momo
