#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gge {

// Base for every error this library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or missing input file.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. `line` is 1-based, 0 when not line-oriented.
class FormatError : public Error {
 public:
  FormatError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Ambiguous keyword/association input to the guidance-graph rule engine.
class RuleError : public Error {
 public:
  using Error::Error;
};

// Network/HTTP failure or an exhausted transcript.
class ProviderError : public Error {
 public:
  using Error::Error;
};

// LLM output that stayed unparseable after the corrective retry.
class TaskError : public Error {
 public:
  using Error::Error;
};

// LLM picked something outside the offered candidate list.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

}  // namespace gge
