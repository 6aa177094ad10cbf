#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ban
{

enum class ErrorKind
{
  input,             // width mismatch, malformed configuration string, bad argument
  structural,        // malformed expression arity
  capacity,          // exhaustive limit or simulation budget exceeded
  range,             // index out of range (block_at, substep_at, eval_local_set)
  duplicate_automaton,
  missing_automaton,
  automaton_out_of_range,
  empty_oblock,
  syntax,
  width,
  duplicate_index,
  not_functional,
  search_exhausted,
};

char const* to_string( ErrorKind kind );

/* Single exception type for the library; `kind()` carries the diagnostic category. */
class Error : public std::runtime_error
{
public:
  Error( ErrorKind kind, std::string const& message );

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/* Text-format errors carry a 1-based source position. */
class ParseError : public Error
{
public:
  ParseError( ErrorKind kind, std::size_t line, std::size_t column, std::string const& message );

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace ban
