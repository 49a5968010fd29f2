#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sublevelstat {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text-format readers; carries the 1-based line number.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& what, std::size_t line)
    : std::runtime_error("line " + std::to_string(line) + ": " + what)
    , line_(line)
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace sublevelstat
