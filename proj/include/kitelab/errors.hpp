#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kitelab {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: out-of-range table entries, bad indices.
class StructuralError : public Error
{
public:
  using Error::Error;
};

/// A call that violates an operation's contract (wrong algebra, non-ideal, ...).
class UsageError : public Error
{
public:
  using Error::Error;
};

/// left_diff / right_diff requested for a pair with a not below b.
class NotComparableError : public Error
{
public:
  using Error::Error;
};

/// Carrier or search space above the configured cap.
class SizeError : public Error
{
public:
  using Error::Error;
};

/// Hypotheses of a construction or criterion are not satisfied.
class PreconditionError : public Error
{
public:
  using Error::Error;
};

/// Axiom check failed where a valid algebra was required.
class AxiomError : public Error
{
public:
  using Error::Error;
};

class ParseError : public Error
{
public:
  ParseError(std::size_t line, std::size_t column, std::string const &what)
    : Error("line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": " + what),
      line_(line), column_(column)
  {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace kitelab
