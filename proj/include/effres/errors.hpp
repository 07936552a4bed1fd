#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace effres {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge list or graph cache. Line is 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Out-of-range vertex or neighbor index, or an otherwise invalid graph query.
class QueryError : public Error {
 public:
  using Error::Error;
};

/// Estimator or oracle parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (s == t, non-adjacent pair, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Dense oracle refused or failed (disconnected graph, size cap exceeded).
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace effres
