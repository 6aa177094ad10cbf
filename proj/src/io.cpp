#include "ban/io.hpp"

#include "ban/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ban::io
{

namespace
{

/* one source line after comment removal; `column` of text[0] is 1-based */
struct Line
{
  std::size_t number;
  std::size_t column;
  std::string_view text;
};

bool is_space( char c ) { return std::isspace( static_cast<unsigned char>( c ) ) != 0; }

std::vector<Line> split_lines( std::string_view text )
{
  std::vector<Line> lines;
  std::size_t number = 0;
  while ( !text.empty() || number == 0u )
  {
    ++number;
    auto const eol = text.find( '\n' );
    auto raw = text.substr( 0, eol );
    text = eol == std::string_view::npos ? std::string_view{} : text.substr( eol + 1u );
    if ( auto const hash = raw.find( '#' ); hash != std::string_view::npos )
      raw = raw.substr( 0, hash );
    std::size_t lead = 0;
    while ( lead < raw.size() && is_space( raw[lead] ) )
      ++lead;
    raw = raw.substr( lead );
    while ( !raw.empty() && is_space( raw.back() ) )
      raw.remove_suffix( 1 );
    if ( !raw.empty() )
      lines.push_back( { number, lead + 1u, raw } );
    if ( eol == std::string_view::npos )
      break;
  }
  return lines;
}

[[noreturn]] void fail( ErrorKind kind, Line const& line, std::size_t offset, std::string const& message )
{
  throw ParseError( kind, line.number, line.column + offset, message );
}

/* whitespace-separated tokens with their offsets inside the line */
std::vector<std::pair<std::size_t, std::string_view>> tokens( std::string_view text, std::size_t base = 0 )
{
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t i = 0;
  while ( i < text.size() )
  {
    while ( i < text.size() && is_space( text[i] ) )
      ++i;
    auto const start = i;
    while ( i < text.size() && !is_space( text[i] ) )
      ++i;
    if ( i > start )
      out.emplace_back( base + start, text.substr( start, i - start ) );
  }
  return out;
}

std::optional<std::size_t> to_index( std::string_view digits )
{
  if ( digits.empty() || !std::all_of( digits.begin(), digits.end(), []( char c ) { return std::isdigit( static_cast<unsigned char>( c ) ); } ) )
    return std::nullopt;
  std::size_t value = 0;
  auto const [ptr, ec] = std::from_chars( digits.data(), digits.data() + digits.size(), value );
  if ( ec != std::errc{} || ptr != digits.data() + digits.size() )
    return std::nullopt;
  return value;
}

/* `key: rest` with an identifier key; nullopt when the line has another shape */
std::optional<std::pair<std::string_view, std::size_t>> keyed( Line const& line, std::string_view key )
{
  if ( line.text.size() <= key.size() || line.text.substr( 0, key.size() ) != key || line.text[key.size()] != ':' )
    return std::nullopt;
  auto offset = key.size() + 1u;
  while ( offset < line.text.size() && is_space( line.text[offset] ) )
    ++offset;
  return std::make_pair( line.text.substr( offset ), offset );
}

class ExprParser
{
public:
  ExprParser( Line line, std::size_t offset, std::optional<std::size_t> width )
      : line_( line ), text_( line.text.substr( offset ) ), base_( offset ), width_( width )
  {
  }

  Expr parse_all()
  {
    auto e = parse_or();
    skip();
    if ( pos_ != text_.size() )
      error( "unexpected '" + std::string( 1, text_[pos_] ) + "'" );
    return e;
  }

private:
  [[noreturn]] void error( std::string const& message, ErrorKind kind = ErrorKind::syntax ) const
  {
    fail( kind, line_, base_ + pos_, message );
  }

  void skip()
  {
    while ( pos_ < text_.size() && is_space( text_[pos_] ) )
      ++pos_;
  }

  bool accept( char c )
  {
    skip();
    if ( pos_ < text_.size() && text_[pos_] == c )
    {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect( char c )
  {
    if ( !accept( c ) )
      error( std::string( "expected '" ) + c + "'" );
  }

  Expr chain( Op op, char symbol, Expr ( ExprParser::*next )() )
  {
    std::vector<Expr> terms{ ( this->*next )() };
    while ( accept( symbol ) )
      terms.push_back( ( this->*next )() );
    return terms.size() == 1u ? terms.front() : Expr::make( op, std::move( terms ) );
  }

  Expr parse_or() { return chain( Op::or_, '|', &ExprParser::parse_xor ); }
  Expr parse_xor() { return chain( Op::xor_, '^', &ExprParser::parse_and ); }
  Expr parse_and() { return chain( Op::and_, '&', &ExprParser::parse_unary ); }

  Expr parse_unary()
  {
    if ( accept( '!' ) )
      return !parse_unary();
    return parse_primary();
  }

  Expr parse_primary()
  {
    skip();
    if ( pos_ == text_.size() )
      error( "unexpected end of expression" );
    if ( accept( '(' ) )
    {
      auto e = parse_or();
      expect( ')' );
      return e;
    }
    auto const start = pos_;
    while ( pos_ < text_.size() && std::isalnum( static_cast<unsigned char>( text_[pos_] ) ) )
      ++pos_;
    auto const word = text_.substr( start, pos_ - start );
    if ( word == "0" || word == "1" )
      return Expr::constant( word == "1" );
    if ( word == "ite" )
    {
      expect( '(' );
      auto c = parse_or();
      expect( ',' );
      auto t = parse_or();
      expect( ',' );
      auto e = parse_or();
      expect( ')' );
      return ite( c, t, e );
    }
    if ( word.size() > 1u && word[0] == 'x' )
      if ( auto const index = to_index( word.substr( 1 ) ) )
      {
        if ( width_ && *index >= *width_ )
        {
          pos_ = start;
          error( "variable x" + std::to_string( *index ) + " outside n = " + std::to_string( *width_ ), ErrorKind::width );
        }
        return Expr::var( *index );
      }
    pos_ = start;
    if ( word.empty() )
      error( "unexpected '" + std::string( 1, text_[pos_] ) + "'" );
    error( "unknown token '" + std::string( word ) + "'" );
  }

  Line line_;
  std::string_view text_;
  std::size_t base_;
  std::optional<std::size_t> width_;
  std::size_t pos_ = 0;
};

int level( Op op )
{
  switch ( op )
  {
  case Op::or_:
    return 1;
  case Op::xor_:
    return 2;
  case Op::and_:
    return 3;
  case Op::not_:
    return 4;
  default:
    return 5;
  }
}

void format_into( std::string& out, Expr const& e )
{
  auto const wrap = [&]( Expr const& child, bool parens ) {
    if ( parens )
      out += '(';
    format_into( out, child );
    if ( parens )
      out += ')';
  };
  switch ( e.op() )
  {
  case Op::var:
    out += 'x';
    out += std::to_string( e.var_index() );
    break;
  case Op::constant:
    out += e.value() ? '1' : '0';
    break;
  case Op::not_:
    out += '!';
    wrap( e.children()[0], level( e.children()[0].op() ) < 4 );
    break;
  case Op::ite:
    out += "ite(";
    format_into( out, e.children()[0] );
    out += ", ";
    format_into( out, e.children()[1] );
    out += ", ";
    format_into( out, e.children()[2] );
    out += ')';
    break;
  default:
  {
    char const* symbol = e.op() == Op::and_ ? " & " : e.op() == Op::xor_ ? " ^ " : " | ";
    bool first = true;
    for ( auto const& c : e.children() )
    {
      if ( !first )
        out += symbol;
      first = false;
      wrap( c, level( c.op() ) <= level( e.op() ) );
    }
  }
  }
}

Configuration parse_bits( Line const& line, std::size_t offset, std::string_view bits, std::size_t n )
{
  if ( bits.empty() || bits.find_first_not_of( "01" ) != std::string_view::npos )
    fail( ErrorKind::syntax, line, offset, "configuration must be a binary string" );
  if ( bits.size() != n )
    fail( ErrorKind::width, line, offset, "configuration has " + std::to_string( bits.size() ) + " bits, expected " + std::to_string( n ) );
  return Configuration::from_string( bits );
}

std::size_t parse_count( Line const& line, std::size_t offset, std::string_view digits )
{
  auto const value = to_index( digits );
  if ( !value )
    fail( ErrorKind::syntax, line, offset, "expected a non-negative integer" );
  return *value;
}

BlockParallelSchedule parse_schedule_at( Line const& line, std::size_t offset, std::size_t n )
{
  auto const text = line.text.substr( offset );
  std::size_t pos = 0;
  auto const skip = [&] {
    while ( pos < text.size() && is_space( text[pos] ) )
      ++pos;
  };
  auto const expect = [&]( char c ) {
    skip();
    if ( pos >= text.size() || text[pos] != c )
      fail( ErrorKind::syntax, line, offset + pos, std::string( "expected '" ) + c + "'" );
    ++pos;
  };
  auto const peek = [&]( char c ) {
    skip();
    return pos < text.size() && text[pos] == c;
  };

  std::vector<std::vector<std::size_t>> oblocks;
  expect( '{' );
  if ( !peek( '}' ) )
    do
    {
      expect( '(' );
      std::vector<std::size_t> block;
      if ( !peek( ')' ) )
        do
        {
          skip();
          auto const start = pos;
          while ( pos < text.size() && std::isdigit( static_cast<unsigned char>( text[pos] ) ) )
            ++pos;
          auto const index = to_index( text.substr( start, pos - start ) );
          if ( !index )
            fail( ErrorKind::syntax, line, offset + start, "expected an automaton index" );
          if ( *index >= n )
            fail( ErrorKind::width, line, offset + start, "automaton " + std::to_string( *index ) + " outside n = " + std::to_string( n ) );
          block.push_back( *index );
        } while ( peek( ',' ) && ++pos );
      expect( ')' );
      oblocks.push_back( std::move( block ) );
    } while ( peek( ',' ) && ++pos );
  expect( '}' );
  skip();
  if ( pos != text.size() )
    fail( ErrorKind::syntax, line, offset + pos, "trailing text after schedule" );
  try
  {
    return BlockParallelSchedule::validate( std::move( oblocks ), n );
  }
  catch ( Error const& e )
  {
    fail( e.kind(), line, offset, e.what() );
  }
}

/* `<index>: <expr>` lines shared by .ban and .cvp */
bool parse_local( Line const& line, std::size_t n, std::vector<std::optional<Expr>>& locals )
{
  auto const colon = line.text.find( ':' );
  if ( colon == std::string_view::npos || colon == 0u )
    return false;
  auto const head = line.text.substr( 0, colon );
  if ( !std::all_of( head.begin(), head.end(), []( char c ) { return std::isdigit( static_cast<unsigned char>( c ) ); } ) )
    return false;
  auto const index = parse_count( line, 0, head );
  if ( index >= n )
    fail( ErrorKind::width, line, 0, "automaton " + std::to_string( index ) + " outside n = " + std::to_string( n ) );
  if ( locals[index] )
    fail( ErrorKind::duplicate_index, line, 0, "local function " + std::to_string( index ) + " given twice" );
  locals[index] = ExprParser( line, colon + 1u, n ).parse_all();
  return true;
}

std::vector<Expr> complete_locals( std::vector<std::optional<Expr>> const& locals )
{
  std::vector<Expr> out;
  for ( std::size_t i = 0; i < locals.size(); ++i )
    out.push_back( locals[i] ? *locals[i] : Expr::var( i ) );
  return out;
}

bool valid_name( std::string_view name )
{
  return !name.empty() && std::isalpha( static_cast<unsigned char>( name[0] ) ) &&
         std::none_of( name.begin(), name.end(), []( char c ) { return is_space( c ) || c == '='; } );
}

std::size_t header( std::vector<Line> const& lines, std::string_view key )
{
  if ( lines.empty() )
    throw ParseError( ErrorKind::syntax, 1, 1, "missing '" + std::string( key ) + ":' header" );
  auto const h = keyed( lines.front(), key );
  if ( !h )
    fail( ErrorKind::syntax, lines.front(), 0, "expected '" + std::string( key ) + ": <n>' first" );
  return parse_count( lines.front(), h->second, h->first );
}

} // namespace

Expr parse_expr( std::string_view text )
{
  auto const lines = split_lines( text );
  if ( lines.size() != 1u )
    throw ParseError( ErrorKind::syntax, lines.empty() ? 1u : lines[1].number, 1, "expected one expression" );
  return ExprParser( lines.front(), 0, std::nullopt ).parse_all();
}

std::string format_expr( Expr const& expr )
{
  std::string out;
  format_into( out, expr );
  return out;
}

BlockParallelSchedule NetworkDocument::schedule_or_parallel() const
{
  return schedule ? *schedule : mu_par( net.size() );
}

Configuration const* NetworkDocument::configuration( std::string const& name ) const
{
  for ( auto const& [key, value] : configurations )
    if ( key == name )
      return &value;
  return nullptr;
}

BlockParallelSchedule parse_schedule( std::string_view text, std::size_t n )
{
  auto const lines = split_lines( text );
  if ( lines.size() != 1u )
    throw ParseError( ErrorKind::syntax, 1, 1, "expected one schedule" );
  return parse_schedule_at( lines.front(), 0, n );
}

NetworkDocument parse_network( std::string_view text )
{
  auto const lines = split_lines( text );
  auto const n = header( lines, "automata" );
  std::vector<std::optional<Expr>> locals( n );
  NetworkDocument doc;
  std::set<std::string> names;

  for ( std::size_t k = 1; k < lines.size(); ++k )
  {
    auto const& line = lines[k];
    if ( auto s = keyed( line, "schedule" ) )
    {
      if ( doc.schedule )
        fail( ErrorKind::duplicate_index, line, 0, "schedule given twice" );
      doc.schedule = parse_schedule_at( line, s->second, n );
    }
    else if ( auto l = keyed( line, "layout" ) )
    {
      for ( auto const& [offset, token] : tokens( l->first, l->second ) )
      {
        auto const eq = token.find( '=' );
        if ( eq == std::string_view::npos || eq == 0u )
          fail( ErrorKind::syntax, line, offset, "expected NAME=a..b" );
        auto const span = token.substr( eq + 1u );
        auto const dots = span.find( ".." );
        auto const first = parse_count( line, offset + eq + 1u, span.substr( 0, dots ) );
        auto const last = dots == std::string_view::npos ? first : parse_count( line, offset + eq + 3u + dots, span.substr( dots + 2u ) );
        if ( last < first || last >= n )
          fail( ErrorKind::width, line, offset, "range outside 0.." + std::to_string( n - 1u ) );
        doc.layout.push_back( { std::string( token.substr( 0, eq ) ), first, last - first + 1u } );
      }
    }
    else if ( auto p = keyed( line, "params" ) )
    {
      for ( auto const& [offset, token] : tokens( p->first, p->second ) )
      {
        auto const eq = token.find( '=' );
        if ( eq == std::string_view::npos || eq == 0u )
          fail( ErrorKind::syntax, line, offset, "expected key=value" );
        doc.params.emplace_back( std::string( token.substr( 0, eq ) ), std::string( token.substr( eq + 1u ) ) );
      }
    }
    else if ( parse_local( line, n, locals ) )
    {
    }
    else if ( auto const eq = line.text.find( '=' ); eq != std::string_view::npos && valid_name( line.text.substr( 0, eq ) ) )
    {
      auto name = std::string( line.text.substr( 0, eq ) );
      if ( !names.insert( name ).second )
        fail( ErrorKind::duplicate_index, line, 0, "configuration '" + name + "' given twice" );
      doc.configurations.emplace_back( std::move( name ), parse_bits( line, eq + 1u, line.text.substr( eq + 1u ), n ) );
    }
    else
      fail( ErrorKind::syntax, line, 0, "unrecognized line" );
  }
  doc.net = Network( complete_locals( locals ) );
  return doc;
}

std::string serialize_network( NetworkDocument const& doc )
{
  std::ostringstream os;
  auto const n = doc.net.size();
  os << "automata: " << n << '\n';
  for ( std::size_t i = 0; i < n; ++i )
    os << i << ": " << format_expr( doc.net.local( i ) ) << '\n';
  if ( doc.schedule )
    os << "schedule: " << doc.schedule->to_string() << '\n';
  if ( !doc.layout.empty() )
  {
    os << "layout:";
    for ( auto const& r : doc.layout )
    {
      os << ' ' << r.name << '=' << r.first;
      if ( r.count > 1u )
        os << ".." << r.last();
    }
    os << '\n';
  }
  if ( !doc.params.empty() )
  {
    os << "params:";
    for ( auto const& [key, value] : doc.params )
      os << ' ' << key << '=' << value;
    os << '\n';
  }
  for ( auto const& [name, x] : doc.configurations )
    os << name << '=' << x.to_string() << '\n';
  return os.str();
}

NetworkDocument to_document( GadgetInstance const& gadget )
{
  NetworkDocument doc;
  doc.net = gadget.net;
  doc.schedule = gadget.schedule;
  doc.layout = gadget.layout;
  doc.configurations = gadget.configurations;
  doc.params = gadget.params;
  return doc;
}

NetworkDocument to_document( Network const& net, std::optional<BlockParallelSchedule> schedule )
{
  NetworkDocument doc;
  doc.net = net;
  doc.schedule = std::move( schedule );
  return doc;
}

IterCvpInstance parse_cvp( std::string_view text )
{
  auto const lines = split_lines( text );
  auto const n = header( lines, "inputs" );
  std::vector<std::optional<Expr>> locals( n );
  std::optional<Configuration> start;
  std::optional<std::size_t> output;
  for ( std::size_t k = 1; k < lines.size(); ++k )
  {
    auto const& line = lines[k];
    if ( auto x = keyed( line, "x" ) )
    {
      if ( start )
        fail( ErrorKind::duplicate_index, line, 0, "start configuration given twice" );
      start = parse_bits( line, x->second, x->first, n );
    }
    else if ( auto i = keyed( line, "i" ) )
    {
      if ( output )
        fail( ErrorKind::duplicate_index, line, 0, "output index given twice" );
      output = parse_count( line, i->second, i->first );
      if ( *output >= n )
        fail( ErrorKind::width, line, i->second, "output index outside n = " + std::to_string( n ) );
    }
    else if ( !parse_local( line, n, locals ) )
      fail( ErrorKind::syntax, line, 0, "unrecognized line" );
  }
  auto const end_line = lines.back().number + 1u;
  if ( !start )
    throw ParseError( ErrorKind::syntax, end_line, 1, "missing 'x:' start configuration" );
  if ( !output )
    throw ParseError( ErrorKind::syntax, end_line, 1, "missing 'i:' output index" );
  return { complete_locals( locals ), *start, *output };
}

std::string serialize_cvp( IterCvpInstance const& inst )
{
  inst.validate();
  std::ostringstream os;
  os << "inputs: " << inst.size() << '\n';
  for ( std::size_t j = 0; j < inst.size(); ++j )
    os << j << ": " << format_expr( inst.circuit[j] ) << '\n';
  os << "x: " << inst.start.to_string() << '\n';
  os << "i: " << inst.output << '\n';
  return os.str();
}

TuringMachine parse_tm( std::string_view text )
{
  TuringMachine tm;
  std::map<std::string, std::pair<Line, std::size_t>> pending;
  std::vector<Line> rules;
  bool has_input = false;

  auto const lines = split_lines( text );
  for ( auto const& line : lines )
  {
    bool matched = false;
    for ( auto const* key : { "states", "alphabet", "input", "blank", "initial", "accept" } )
      if ( auto v = keyed( line, key ) )
      {
        matched = true;
        if ( pending.count( key ) )
          fail( ErrorKind::duplicate_index, line, 0, std::string( key ) + " given twice" );
        pending.emplace( key, std::make_pair( line, v->second ) );
      }
    if ( !matched )
      rules.push_back( line );
  }

  auto const names = [&]( char const* key, bool required ) {
    std::vector<std::string> out;
    auto const it = pending.find( key );
    if ( it == pending.end() )
    {
      if ( required )
        throw ParseError( ErrorKind::syntax, 1, 1, std::string( "missing '" ) + key + ":' line" );
      return out;
    }
    auto const& [line, offset] = it->second;
    std::set<std::string_view> seen;
    for ( auto const& [at, token] : tokens( line.text.substr( offset ), offset ) )
    {
      if ( !seen.insert( token ).second )
        fail( ErrorKind::duplicate_index, line, at, "'" + std::string( token ) + "' listed twice" );
      out.emplace_back( token );
    }
    if ( out.empty() )
      fail( ErrorKind::syntax, line, offset, std::string( key ) + " is empty" );
    return out;
  };
  auto const find = [&]( std::vector<std::string> const& pool, std::string_view name, Line const& line, std::size_t at ) {
    auto const it = std::find( pool.begin(), pool.end(), name );
    if ( it == pool.end() )
      fail( ErrorKind::syntax, line, at, "unknown name '" + std::string( name ) + "'" );
    return static_cast<std::size_t>( it - pool.begin() );
  };
  auto const single = [&]( char const* key, std::vector<std::string> const& pool, std::size_t fallback ) {
    auto const it = pending.find( key );
    if ( it == pending.end() )
      return fallback;
    auto const& [line, offset] = it->second;
    auto const tok = tokens( line.text.substr( offset ), offset );
    if ( tok.size() != 1u )
      fail( ErrorKind::syntax, line, offset, std::string( key ) + " takes one name" );
    return find( pool, tok[0].second, line, tok[0].first );
  };

  tm.states = names( "states", true );
  tm.alphabet = names( "alphabet", true );
  has_input = pending.count( "input" ) != 0u;
  tm.input_alphabet = has_input ? names( "input", true ) : tm.alphabet;
  for ( auto const& s : tm.input_alphabet )
    if ( std::find( tm.alphabet.begin(), tm.alphabet.end(), s ) == tm.alphabet.end() )
    {
      auto const& [line, offset] = pending.at( "input" );
      fail( ErrorKind::syntax, line, offset, "input symbol '" + s + "' is not in the alphabet" );
    }
  tm.blank = single( "blank", tm.alphabet, 0 );
  tm.initial = single( "initial", tm.states, 0 );
  if ( !pending.count( "accept" ) )
    throw ParseError( ErrorKind::syntax, 1, 1, "missing 'accept:' line" );
  tm.accept = single( "accept", tm.states, 0 );

  for ( auto const& line : rules )
  {
    auto const tok = tokens( line.text );
    if ( tok.size() != 6u || tok[2].second != "->" )
      fail( ErrorKind::syntax, line, 0, "expected 'state symbol -> state symbol L|R|S'" );
    auto const q = find( tm.states, tok[0].second, line, tok[0].first );
    auto const a = find( tm.alphabet, tok[1].second, line, tok[1].first );
    TuringMachine::Action action{ find( tm.states, tok[3].second, line, tok[3].first ),
                                  find( tm.alphabet, tok[4].second, line, tok[4].first ), TuringMachine::Move::stay };
    auto const m = tok[5].second;
    if ( m == "L" )
      action.move = TuringMachine::Move::left;
    else if ( m == "R" )
      action.move = TuringMachine::Move::right;
    else if ( m != "S" )
      fail( ErrorKind::syntax, line, tok[5].first, "move must be L, R or S" );
    if ( !tm.delta.emplace( std::make_pair( q, a ), action ).second )
      fail( ErrorKind::duplicate_index, line, 0, "transition for (" + tm.states[q] + ", " + tm.alphabet[a] + ") given twice" );
  }
  return tm;
}

std::vector<std::size_t> parse_tm_word( TuringMachine const& tm, std::string_view word )
{
  std::vector<std::string> parts;
  if ( word.find( ',' ) != std::string_view::npos )
  {
    std::size_t start = 0;
    while ( true )
    {
      auto const comma = word.find( ',', start );
      parts.emplace_back( word.substr( start, comma - start ) );
      if ( comma == std::string_view::npos )
        break;
      start = comma + 1u;
    }
  }
  else
    for ( char c : word )
      parts.emplace_back( 1, c );
  for ( std::size_t k = 0; k < parts.size(); ++k )
    if ( std::find( tm.input_alphabet.begin(), tm.input_alphabet.end(), parts[k] ) == tm.input_alphabet.end() )
      throw ParseError( ErrorKind::syntax, 1, k + 1u, "'" + parts[k] + "' is not an input symbol" );
  return tm.encode_word( parts );
}

ReactionSystem parse_reaction_system( std::string_view text )
{
  auto const lines = split_lines( text );
  if ( lines.empty() )
    throw ParseError( ErrorKind::syntax, 1, 1, "missing 'entities:' line" );
  auto const head = keyed( lines.front(), "entities" );
  if ( !head )
    fail( ErrorKind::syntax, lines.front(), 0, "expected 'entities:' first" );

  ReactionSystem rs;
  std::map<std::string_view, std::size_t> index;
  for ( auto const& [at, token] : tokens( head->first, head->second ) )
  {
    if ( !index.emplace( token, rs.entities.size() ).second )
      fail( ErrorKind::duplicate_index, lines.front(), at, "entity '" + std::string( token ) + "' listed twice" );
    rs.entities.emplace_back( token );
  }

  for ( std::size_t k = 1; k < lines.size(); ++k )
  {
    auto const& line = lines[k];
    auto const arrow = line.text.find( "->" );
    if ( arrow == std::string_view::npos )
      fail( ErrorKind::syntax, line, 0, "expected 'reactants ; inhibitors -> products'" );
    auto const semi = line.text.substr( 0, arrow ).find( ';' );
    auto const collect = [&]( std::size_t from, std::size_t to ) {
      std::vector<std::size_t> out;
      for ( auto const& [at, token] : tokens( line.text.substr( from, to - from ), from ) )
      {
        auto const it = index.find( token );
        if ( it == index.end() )
          fail( ErrorKind::syntax, line, at, "unknown entity '" + std::string( token ) + "'" );
        if ( std::find( out.begin(), out.end(), it->second ) == out.end() )
          out.push_back( it->second );
      }
      return out;
    };
    Reaction r;
    r.reactants = collect( 0, semi == std::string_view::npos ? arrow : semi );
    if ( semi != std::string_view::npos )
      r.inhibitors = collect( semi + 1u, arrow );
    r.products = collect( arrow + 2u, line.text.size() );
    rs.reactions.push_back( std::move( r ) );
  }
  return rs;
}

PatternGraph parse_pattern( std::string_view text )
{
  PatternGraph g;
  std::map<std::string, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  auto const vertex = [&]( std::string_view name ) {
    auto const [it, fresh] = index.emplace( std::string( name ), g.names.size() );
    if ( fresh )
      g.names.emplace_back( name );
    return it->second;
  };
  for ( auto const& line : split_lines( text ) )
  {
    auto const tok = tokens( line.text );
    if ( tok.size() == 1u && tok[0].second != "->" )
      vertex( tok[0].second );
    else if ( tok.size() == 3u && tok[1].second == "->" && tok[0].second != "->" && tok[2].second != "->" )
    {
      auto const v = vertex( tok[0].second );
      auto const w = vertex( tok[2].second );
      if ( !seen.emplace( v, w ).second )
        fail( ErrorKind::duplicate_index, line, 0, "arc given twice" );
      g.arcs.emplace_back( v, w );
    }
    else
      fail( ErrorKind::syntax, line, 0, "expected 'v -> w' or 'v'" );
  }
  return g;
}

std::string export_dot( FunctionalGraph const& graph )
{
  auto const quote = []( std::string const& s ) {
    std::string out = "\"";
    for ( char c : s )
    {
      if ( c == '"' || c == '\\' )
        out += '\\';
      out += c;
    }
    return out + '"';
  };
  std::ostringstream os;
  os << "digraph transitions {\n";
  for ( std::uint64_t v = 0; v < graph.size(); ++v )
    os << "  " << quote( graph.label( v ) ) << ";\n";
  for ( std::uint64_t v = 0; v < graph.size(); ++v )
    if ( graph.out[v] != FunctionalGraph::none )
      os << "  " << quote( graph.label( v ) ) << " -> " << quote( graph.label( graph.out[v] ) ) << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_json( FunctionalGraph const& graph )
{
  nlohmann::json edges = nlohmann::json::array();
  for ( std::uint64_t v = 0; v < graph.size(); ++v )
    if ( graph.out[v] != FunctionalGraph::none )
      edges.push_back( { graph.label( v ), graph.label( graph.out[v] ) } );
  nlohmann::json doc;
  doc["n"] = graph.bits;
  doc["edges"] = std::move( edges );
  return doc.dump() + '\n';
}

FunctionalGraph parse_json_graph( std::string_view text )
{
  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse( text );
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw ParseError( ErrorKind::syntax, 1, e.byte, e.what() );
  }
  if ( !doc.is_object() || !doc.contains( "n" ) || !doc["n"].is_number_unsigned() || !doc.contains( "edges" ) || !doc["edges"].is_array() )
    throw ParseError( ErrorKind::syntax, 1, 1, "expected {\"n\": <bits>, \"edges\": [...]}" );
  FunctionalGraph g;
  g.bits = doc["n"].get<std::size_t>();
  if ( g.bits > 24u )
    throw Error( ErrorKind::capacity, "transition graph over more than 24 bits" );
  g.out.assign( space_size( g.bits ), FunctionalGraph::none );
  auto const rank = [&]( nlohmann::json const& label ) {
    if ( !label.is_string() )
      throw ParseError( ErrorKind::syntax, 1, 1, "configurations are strings" );
    auto const s = label.get<std::string>();
    if ( s.size() != g.bits || s.find_first_not_of( "01" ) != std::string::npos )
      throw ParseError( ErrorKind::width, 1, 1, "configuration '" + s + "' is not a " + std::to_string( g.bits ) + "-bit string" );
    return Configuration::from_string( s ).rank();
  };
  for ( auto const& edge : doc["edges"] )
  {
    if ( !edge.is_array() || edge.size() != 2u )
      throw ParseError( ErrorKind::syntax, 1, 1, "an edge is a pair [x, y]" );
    auto const x = rank( edge[0] );
    if ( g.out[x] != FunctionalGraph::none )
      throw ParseError( ErrorKind::duplicate_index, 1, 1, "configuration with two successors" );
    g.out[x] = rank( edge[1] );
  }
  return g;
}

std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw Error( ErrorKind::input, "cannot open '" + path + "'" );
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace ban::io
