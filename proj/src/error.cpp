#include "ban/error.hpp"

namespace ban
{

char const* to_string( ErrorKind kind )
{
  switch ( kind )
  {
  case ErrorKind::input: return "input";
  case ErrorKind::structural: return "structural";
  case ErrorKind::capacity: return "capacity";
  case ErrorKind::range: return "range";
  case ErrorKind::duplicate_automaton: return "duplicate-automaton";
  case ErrorKind::missing_automaton: return "missing-automaton";
  case ErrorKind::automaton_out_of_range: return "automaton-out-of-range";
  case ErrorKind::empty_oblock: return "empty-oblock";
  case ErrorKind::syntax: return "syntax";
  case ErrorKind::width: return "width";
  case ErrorKind::duplicate_index: return "duplicate-index";
  case ErrorKind::not_functional: return "not-functional";
  case ErrorKind::search_exhausted: return "search-exhausted";
  }
  return "unknown";
}

Error::Error( ErrorKind kind, std::string const& message )
    : std::runtime_error( std::string( to_string( kind ) ) + " error: " + message ), kind_( kind )
{
}

ParseError::ParseError( ErrorKind kind, std::size_t line, std::size_t column, std::string const& message )
    : Error( kind, "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + message ),
      line_( line ), column_( column )
{
}

} // namespace ban
