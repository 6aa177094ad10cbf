#include "ban/configuration.hpp"

#include "ban/error.hpp"

#include <bit>

namespace ban
{

Configuration::Configuration( std::size_t n ) : words_( ( n + 63u ) / 64u, 0u ), size_( n ) {}

Configuration Configuration::from_string( std::string_view bits )
{
  Configuration x( bits.size() );
  for ( std::size_t i = 0; i < bits.size(); ++i )
  {
    if ( bits[i] == '1' )
      x.set( i, true );
    else if ( bits[i] != '0' )
      throw Error( ErrorKind::input, "configuration '" + std::string( bits ) + "' contains a character other than 0/1" );
  }
  return x;
}

Configuration Configuration::from_rank( std::size_t n, std::uint64_t rank )
{
  if ( n > 64u )
    throw Error( ErrorKind::capacity, "rank encoding supports at most 64 automata" );
  Configuration x( n );
  for ( std::size_t i = 0; i < n; ++i )
    if ( ( rank >> ( n - 1u - i ) ) & 1u )
      x.set( i, true );
  return x;
}

Configuration Configuration::ones( std::size_t n )
{
  Configuration x( n );
  for ( std::size_t i = 0; i < n; ++i )
    x.set( i, true );
  return x;
}

bool Configuration::get( std::size_t i ) const
{
  if ( i >= size_ )
    throw Error( ErrorKind::range, "automaton " + std::to_string( i ) + " outside configuration of size " + std::to_string( size_ ) );
  return ( *this )[i];
}

void Configuration::set( std::size_t i, bool value )
{
  if ( i >= size_ )
    throw Error( ErrorKind::range, "automaton " + std::to_string( i ) + " outside configuration of size " + std::to_string( size_ ) );
  auto const mask = std::uint64_t{ 1 } << ( i & 63u );
  if ( value )
    words_[i >> 6] |= mask;
  else
    words_[i >> 6] &= ~mask;
}

void Configuration::flip( std::size_t i )
{
  set( i, !get( i ) );
}

std::uint64_t Configuration::rank() const
{
  if ( size_ > 64u )
    throw Error( ErrorKind::capacity, "rank encoding supports at most 64 automata" );
  std::uint64_t r = 0;
  for ( std::size_t i = 0; i < size_; ++i )
    r = ( r << 1 ) | static_cast<std::uint64_t>( ( *this )[i] );
  return r;
}

Configuration Configuration::restrict( std::span<std::size_t const> indices ) const
{
  Configuration y( indices.size() );
  for ( std::size_t k = 0; k < indices.size(); ++k )
    y.set( k, get( indices[k] ) );
  return y;
}

Configuration Configuration::append( Configuration const& tail ) const
{
  Configuration y( size_ + tail.size_ );
  for ( std::size_t i = 0; i < size_; ++i )
    y.set( i, ( *this )[i] );
  for ( std::size_t i = 0; i < tail.size_; ++i )
    y.set( size_ + i, tail[i] );
  return y;
}

std::string Configuration::to_string() const
{
  std::string s( size_, '0' );
  for ( std::size_t i = 0; i < size_; ++i )
    if ( ( *this )[i] )
      s[i] = '1';
  return s;
}

std::size_t Configuration::count_ones() const
{
  std::size_t c = 0;
  for ( auto w : words_ )
    c += static_cast<std::size_t>( std::popcount( w ) );
  return c;
}

std::size_t Configuration::hash() const noexcept
{
  std::size_t h = size_ * 0x9e3779b97f4a7c15ull;
  for ( auto w : words_ )
    h ^= std::hash<std::uint64_t>{}( w ) + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
  return h;
}

std::uint64_t space_size( std::size_t n )
{
  if ( n > 63u )
    throw Error( ErrorKind::capacity, "configuration space of " + std::to_string( n ) + " automata is not enumerable" );
  return std::uint64_t{ 1 } << n;
}

} // namespace ban
