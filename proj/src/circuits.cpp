#include "ban/circuits.hpp"

#include "ban/error.hpp"

namespace ban::circuits
{

namespace
{

bool bit_of( BigInt const& value, std::size_t k )
{
  return boost::multiprecision::bit_test( value, static_cast<unsigned>( k ) );
}

} // namespace

Bits variables( std::size_t first, std::size_t width )
{
  Bits b;
  b.reserve( width );
  for ( std::size_t k = 0; k < width; ++k )
    b.push_back( Expr::var( first + k ) );
  return b;
}

Bits constant( std::size_t width, BigInt const& value )
{
  Bits b;
  b.reserve( width );
  for ( std::size_t k = 0; k < width; ++k )
    b.push_back( Expr::constant( bit_of( value, width - 1u - k ) ) );
  return b;
}

Expr all_of( std::vector<Expr> terms )
{
  std::erase_if( terms, []( Expr const& e ) { return e.is_const( true ); } );
  for ( auto const& t : terms )
    if ( t.is_const( false ) )
      return Expr::constant( false );
  if ( terms.empty() )
    return Expr::constant( true );
  if ( terms.size() == 1u )
    return terms.front();
  return Expr::make( Op::and_, std::move( terms ) );
}

Expr any_of( std::vector<Expr> terms )
{
  std::erase_if( terms, []( Expr const& e ) { return e.is_const( false ); } );
  for ( auto const& t : terms )
    if ( t.is_const( true ) )
      return Expr::constant( true );
  if ( terms.empty() )
    return Expr::constant( false );
  if ( terms.size() == 1u )
    return terms.front();
  return Expr::make( Op::or_, std::move( terms ) );
}

Expr equals( std::span<Expr const> bits, BigInt const& value )
{
  auto const w = bits.size();
  if ( value < 0 || ( w < 4096u && value >> w != 0 ) )
    return Expr::constant( false );
  std::vector<Expr> terms;
  for ( std::size_t k = 0; k < w; ++k )
    terms.push_back( bit_of( value, w - 1u - k ) ? bits[k] : simplify( !bits[k] ) );
  return all_of( std::move( terms ) );
}

Expr less_than( std::span<Expr const> bits, BigInt const& value )
{
  auto const w = bits.size();
  if ( value <= 0 )
    return Expr::constant( false );
  if ( value >> w != 0 )
    return Expr::constant( true );
  /* scan from the LSB: lt_k = bits[k..] < value[k..] */
  Expr lt = Expr::constant( false );
  for ( std::size_t k = w; k-- > 0; )
  {
    if ( bit_of( value, w - 1u - k ) )
      lt = any_of( { simplify( !bits[k] ), lt } );
    else
      lt = all_of( { simplify( !bits[k] ), lt } );
  }
  return lt;
}

Expr at_least( std::span<Expr const> bits, BigInt const& value )
{
  return simplify( !less_than( bits, value ) );
}

Bits increment( std::span<Expr const> bits )
{
  auto const w = bits.size();
  Bits out( w );
  Expr carry = Expr::constant( true );
  for ( std::size_t k = w; k-- > 0; )
  {
    out[k] = simplify( bits[k] ^ carry );
    carry = all_of( { bits[k], carry } );
  }
  return out;
}

Bits select( Expr const& condition, std::span<Expr const> then_bits, std::span<Expr const> else_bits )
{
  if ( then_bits.size() != else_bits.size() )
    throw Error( ErrorKind::width, "select over vectors of different widths" );
  Bits out;
  for ( std::size_t k = 0; k < then_bits.size(); ++k )
    out.push_back( simplify( ite( condition, then_bits[k], else_bits[k] ) ) );
  return out;
}

Bits lookup( std::span<Expr const> bits, std::vector<std::uint64_t> const& table, std::size_t out_width,
             std::span<Expr const> otherwise )
{
  if ( otherwise.size() != out_width )
    throw Error( ErrorKind::width, "lookup default has the wrong width" );
  std::vector<Expr> guards;
  for ( std::uint64_t v = 0; v < table.size(); ++v )
    guards.push_back( equals( bits, v ) );
  auto const in_table = any_of( guards );
  Bits out;
  for ( std::size_t k = 0; k < out_width; ++k )
  {
    std::vector<Expr> ones;
    for ( std::uint64_t v = 0; v < table.size(); ++v )
      if ( ( table[v] >> ( out_width - 1u - k ) ) & 1u )
        ones.push_back( guards[v] );
    out.push_back( simplify( ite( in_table, any_of( ones ), otherwise[k] ) ) );
  }
  return out;
}

} // namespace ban::circuits
