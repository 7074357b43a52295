#pragma once

#include <stdexcept>
#include <string>

namespace foragesim {

// Invalid configuration value; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested URL is unknown or not yet created at the query time.
class FetchError : public std::runtime_error {
 public:
  explicit FetchError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed trace/log record; carries the 1-based line number.
class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally well-formed trace that violates an environment invariant.
class TraceValidationError : public std::runtime_error {
 public:
  explicit TraceValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation on an unknown or dead forager id.
class LifecycleError : public std::runtime_error {
 public:
  explicit LifecycleError(const std::string& msg) : std::runtime_error(msg) {}
};

// A forager has neither a usable weblog nor a frontier; the scheduler decides.
class StuckForagerError : public std::runtime_error {
 public:
  explicit StuckForagerError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values fed into a numeric update.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Not enough data points for a statistical fit.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace foragesim
