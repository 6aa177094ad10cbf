#include "support.hpp"

#include "ban/error.hpp"

#include <doctest.h>

using namespace ban;

TEST_CASE( "configuration text and rank" )
{
  auto const x = Configuration::from_string( "101" );
  CHECK( x.size() == 3u );
  CHECK( x[0] );
  CHECK_FALSE( x[1] );
  CHECK( x.rank() == 5u );
  CHECK( Configuration::from_rank( 3, 5 ) == x );
  CHECK( x.to_string() == "101" );
  CHECK( x.restrict( std::vector<std::size_t>{ 2, 0 } ).to_string() == "11" );
  CHECK_THROWS_AS( Configuration::from_string( "10x" ), Error );

  auto big = Configuration( 130 );
  big.set( 129, true );
  CHECK( big.count_ones() == 1u );
  CHECK( big.append( x ).size() == 133u );
}

TEST_CASE( "eval_circuit examples" )
{
  auto const x = Configuration::from_string( "101" );
  CHECK_FALSE( eval( Expr::var( 1 ), x ) );
  for ( std::uint64_t r = 0; r < 4; ++r )
    CHECK_FALSE( eval( Expr::var( 0 ) ^ Expr::var( 0 ), Configuration::from_rank( 2, r ) ) );
  CHECK( eval( ite( Expr::var( 0 ), Expr::constant( true ), Expr::var( 2 ) ), Configuration::from_string( "001" ) ) );
}

TEST_CASE( "eval rejects a short configuration" )
{
  auto const e = Expr::var( 4 );
  try
  {
    (void)eval( e, Configuration( 2 ) );
    FAIL( "expected an error" );
  }
  catch ( Error const& err )
  {
    CHECK( err.kind() == ErrorKind::input );
  }
}

TEST_CASE( "malformed arity is structural" )
{
  try
  {
    (void)Expr::make( Op::ite, { Expr::var( 0 ) } );
    FAIL( "expected an error" );
  }
  catch ( Error const& err )
  {
    CHECK( err.kind() == ErrorKind::structural );
  }
  CHECK_THROWS_AS( Expr::make( Op::not_, { Expr::var( 0 ), Expr::var( 1 ) } ), Error );
}

TEST_CASE( "network width is checked" )
{
  try
  {
    Network net( { Expr::var( 5 ), Expr::var( 0 ) } );
    FAIL( "expected an error" );
  }
  catch ( Error const& err )
  {
    CHECK( err.kind() == ErrorKind::width );
  }
}

TEST_CASE( "eval_local_set" )
{
  auto const net = testing::n1();
  auto const x = Configuration::from_string( "111" );
  CHECK( eval_local_set( net, std::vector<std::size_t>{ 0, 1 }, x ).to_string() == "10" );
  CHECK( eval_local_set( net, std::vector<std::size_t>{}, x ).size() == 0u );
  auto const id = Network::identity( 4 );
  auto const y = Configuration::from_string( "0110" );
  CHECK( eval_local_set( id, std::vector<std::size_t>{ 1, 3 }, y ) == y.restrict( std::vector<std::size_t>{ 1, 3 } ) );
  CHECK_THROWS_AS( eval_local_set( net, std::vector<std::size_t>{ 3 }, x ), Error );
}

TEST_CASE( "eval_local_set over all of [n] is the parallel image" )
{
  std::mt19937_64 rng( 11 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto const net = testing::random_network( rng, 5 );
    std::vector<std::size_t> all{ 0, 1, 2, 3, 4 };
    for ( std::uint64_t r = 0; r < 32; ++r )
    {
      auto const x = Configuration::from_rank( 5, r );
      CHECK( eval_local_set( net, all, x ) == net.parallel_image( x ) );
    }
  }
}

TEST_CASE( "influence graph is semantic" )
{
  Network cancel( { Expr::make( Op::xor_, { Expr::var( 0 ), Expr::var( 1 ), Expr::var( 1 ) } ), Expr::var( 1 ) } );
  auto const g = influence_graph( cancel );
  CHECK( g.has_arc( 0, 0 ) );
  CHECK_FALSE( g.has_arc( 1, 0 ) );

  auto const id = influence_graph( Network::identity( 4 ) );
  CHECK( id.arcs.size() == 4u );
  for ( std::size_t i = 0; i < 4; ++i )
    CHECK( id.has_arc( i, i ) );
  CHECK_FALSE( id.has_non_loop_arc() );

  CHECK_THROWS_AS( influence_graph( Network::identity( 21 ) ), Error );
}

TEST_CASE( "influence arcs are a subset of syntactic arcs; serial and parallel agree" )
{
  std::mt19937_64 rng( 12 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto const net = testing::random_network( rng, 6, 3 );
    auto const par = influence_graph( net, { .limit = 20, .policy = ExecPolicy::parallel } );
    auto const ser = influence_graph( net, { .limit = 20, .policy = ExecPolicy::serial } );
    CHECK( par.arcs == ser.arcs );
    for ( auto const& [j, i] : par.arcs )
    {
      auto const s = net.local( i ).support();
      CHECK( std::find( s.begin(), s.end(), j ) != s.end() );
    }
  }
}

TEST_CASE( "simplify preserves semantics" )
{
  std::mt19937_64 rng( 13 );
  for ( int trial = 0; trial < 50; ++trial )
  {
    auto e = testing::random_expr( rng, 4, 4 );
    e = e & Expr::constant( true );
    auto const s = simplify( e );
    for ( std::uint64_t r = 0; r < 16; ++r )
    {
      auto const x = Configuration::from_rank( 4, r );
      CHECK( eval( e, x ) == eval( s, x ) );
    }
  }
}

TEST_CASE( "compiled programs match tree evaluation" )
{
  std::mt19937_64 rng( 14 );
  auto const net = testing::random_network( rng, 6, 4 );
  CompiledNetwork const c( net );
  std::vector<std::uint64_t> scratch( c.scratch_size() );
  std::vector<std::uint64_t> state( 6 );
  for ( std::size_t j = 0; j < 6; ++j )
    state[j] = rng();
  for ( std::size_t i = 0; i < 6; ++i )
  {
    auto const lanes = c.eval( i, state.data(), scratch.data() );
    for ( unsigned lane = 0; lane < 64; ++lane )
    {
      Configuration x( 6 );
      for ( std::size_t j = 0; j < 6; ++j )
        x.set( j, ( state[j] >> lane ) & 1u );
      CHECK( ( ( lanes >> lane ) & 1u ) == eval( net.local( i ), x ) );
    }
  }
}
