#pragma once

#include "ban/analysis.hpp"
#include "ban/dynamics.hpp"
#include "ban/gadgets.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace ban::testing
{

/* f_0 = x_1, f_1 = !x_2, f_2 = x_0 */
inline Network n1()
{
  return Network( { Expr::var( 1 ), !Expr::var( 2 ), Expr::var( 0 ) } );
}

inline BlockParallelSchedule mu1()
{
  return BlockParallelSchedule::validate( { { 0 }, { 1, 2 } }, 3 );
}

inline Network negation( std::size_t n )
{
  std::vector<Expr> f;
  for ( std::size_t i = 0; i < n; ++i )
    f.push_back( !Expr::var( i ) );
  return Network( std::move( f ) );
}

inline Network constant_zero( std::size_t n )
{
  return Network( std::vector<Expr>( n, Expr::constant( false ) ) );
}

inline Expr random_expr( std::mt19937_64& rng, std::size_t n, int depth )
{
  std::uniform_int_distribution<int> pick( 0, depth <= 0 ? 1 : 6 );
  auto var = [&] { return Expr::var( std::uniform_int_distribution<std::size_t>( 0, n - 1u )( rng ) ); };
  switch ( pick( rng ) )
  {
  case 0:
  case 1:
    return var();
  case 2:
    return !random_expr( rng, n, depth - 1 );
  case 3:
    return random_expr( rng, n, depth - 1 ) & random_expr( rng, n, depth - 1 );
  case 4:
    return random_expr( rng, n, depth - 1 ) | random_expr( rng, n, depth - 1 );
  case 5:
    return random_expr( rng, n, depth - 1 ) ^ random_expr( rng, n, depth - 1 );
  default:
    return ite( random_expr( rng, n, depth - 1 ), random_expr( rng, n, depth - 1 ), random_expr( rng, n, depth - 1 ) );
  }
}

inline Network random_network( std::mt19937_64& rng, std::size_t n, int depth = 2 )
{
  std::vector<Expr> f;
  for ( std::size_t i = 0; i < n; ++i )
    f.push_back( random_expr( rng, n, depth ) );
  return Network( std::move( f ) );
}

/* random partitioned order with o-blocks of length <= max_len */
inline BlockParallelSchedule random_schedule( std::mt19937_64& rng, std::size_t n, std::size_t max_len = 3 )
{
  std::vector<std::size_t> perm( n );
  std::iota( perm.begin(), perm.end(), 0u );
  std::shuffle( perm.begin(), perm.end(), rng );
  std::vector<std::vector<std::size_t>> ob;
  for ( std::size_t k = 0; k < n; )
  {
    auto len = std::uniform_int_distribution<std::size_t>( 1, std::min( max_len, n - k ) )( rng );
    ob.emplace_back( perm.begin() + static_cast<std::ptrdiff_t>( k ), perm.begin() + static_cast<std::ptrdiff_t>( k + len ) );
    k += len;
  }
  return BlockParallelSchedule::validate( std::move( ob ), n );
}

inline Configuration random_configuration( std::mt19937_64& rng, std::size_t n )
{
  Configuration x( n );
  for ( std::size_t i = 0; i < n; ++i )
    x.set( i, rng() & 1u );
  return x;
}

inline IterCvpInstance random_cvp( std::mt19937_64& rng, std::size_t n, int depth = 2 )
{
  IterCvpInstance inst;
  for ( std::size_t j = 0; j < n; ++j )
    inst.circuit.push_back( random_expr( rng, n, depth ) );
  inst.start = random_configuration( rng, n );
  inst.output = std::uniform_int_distribution<std::size_t>( 0, n - 1u )( rng );
  return inst;
}

/* binary +1 on n bits, MSB first */
inline IterCvpInstance increment_cvp( std::size_t n, Configuration start, std::size_t output )
{
  IterCvpInstance inst;
  for ( std::size_t j = 0; j < n; ++j )
  {
    Expr carry = Expr::constant( true );
    for ( std::size_t k = j + 1u; k < n; ++k )
      carry = carry & Expr::var( k );
    inst.circuit.push_back( simplify( Expr::var( j ) ^ carry ) );
  }
  inst.start = std::move( start );
  inst.output = output;
  return inst;
}

} // namespace ban::testing
