#include "support.hpp"

#include "ban/error.hpp"

#include <doctest.h>

using namespace ban;

namespace
{

/* f^k(x) = x by repeated stepping */
bool periodic_oracle( Network const& net, BlockParallelSchedule const& mu, std::uint64_t k )
{
  auto const n = net.size();
  for ( std::uint64_t r = 0; r < ( std::uint64_t{ 1 } << n ); ++r )
  {
    auto const x = Configuration::from_rank( n, r );
    if ( iterate( net, mu, x, k ) == x )
      return true;
  }
  return false;
}

} // namespace

TEST_CASE( "step deciders" )
{
  auto const net = testing::n1();
  auto const mu = testing::mu1();
  CHECK( is_step( net, mu, Configuration::from_string( "111" ), Configuration::from_string( "001" ) ) );
  CHECK_FALSE( is_step( net, mu, Configuration::from_string( "111" ), Configuration::from_string( "101" ) ) );
  CHECK_FALSE( image_bit( net, mu, Configuration::from_string( "111" ), 0 ) );
  CHECK( image_bit( net, mu, Configuration::from_string( "111" ), 2 ) );

  Network zero_last( { Expr::var( 1 ), Expr::var( 0 ), Expr::constant( false ) } );
  auto const seq = BlockParallelSchedule::validate( { { 0, 1, 2 } }, 3 );
  for ( std::uint64_t r = 0; r < 8; ++r )
    CHECK_FALSE( image_bit( zero_last, seq, Configuration::from_rank( 3, r ), 2 ) );
}

TEST_CASE( "preimage" )
{
  auto const neg = testing::negation( 3 );
  for ( std::uint64_t r = 0; r < 8; ++r )
    CHECK( has_preimage( neg, mu_par( 3 ), Configuration::from_rank( 3, r ) ) );
  auto const zero = testing::constant_zero( 3 );
  auto const d = has_preimage( zero, mu_par( 3 ), Configuration( 3 ) );
  CHECK( d.answer );
  REQUIRE( d.witness );
  CHECK( step( zero, mu_par( 3 ), *d.witness ) == Configuration( 3 ) );
  CHECK_FALSE( has_preimage( zero, mu_par( 3 ), Configuration::from_string( "010" ) ) );
}

TEST_CASE( "fixed points and limit cycles" )
{
  CHECK( exists_fixed_point( Network::identity( 3 ), mu_par( 3 ) ) );
  auto const neg = testing::negation( 2 );
  CHECK_FALSE( exists_fixed_point( neg, mu_par( 2 ) ) );
  CHECK( exists_limit_cycle( neg, mu_par( 2 ), 2 ) );
  CHECK( exists_cycle_of_length( neg, mu_par( 2 ), 2 ) );
  CHECK_FALSE( exists_cycle_of_length( neg, mu_par( 2 ), 1 ) );
  CHECK_FALSE( exists_limit_cycle( neg, mu_par( 2 ), 3 ) );
  CHECK( cycle_lengths( neg, mu_par( 2 ) ) == std::vector<std::uint64_t>{ 2, 2 } );
  CHECK_THROWS_AS( exists_limit_cycle( neg, mu_par( 2 ), 0 ), Error );
}

TEST_CASE( "limit cycle deciders against iterated stepping" )
{
  std::mt19937_64 rng( 41 );
  for ( int trial = 0; trial < 40; ++trial )
  {
    auto const n = std::uniform_int_distribution<std::size_t>( 1, 4 )( rng );
    auto const net = testing::random_network( rng, n );
    auto const mu = testing::random_schedule( rng, n );
    for ( std::uint64_t k = 1; k <= 4; ++k )
    {
      bool const yes = exists_limit_cycle( net, mu, k ).answer;
      CHECK( yes == periodic_oracle( net, mu, k ) );
      if ( yes )
        for ( std::uint64_t m = 2; m <= 3; ++m )
          CHECK( exists_limit_cycle( net, mu, m * k ) );
    }
  }
}

TEST_CASE( "reachability" )
{
  auto const x = Configuration::from_string( "01" );
  CHECK( reachable( testing::n1(), testing::mu1(), Configuration::from_string( "111" ), Configuration::from_string( "111" ) ) );
  CHECK( reachable( testing::negation( 2 ), mu_par( 2 ), Configuration::from_string( "00" ), Configuration::from_string( "11" ) ) );
  CHECK_FALSE( reachable( testing::negation( 2 ), mu_par( 2 ), Configuration::from_string( "00" ), x ) );
}

TEST_CASE( "bijectivity" )
{
  std::mt19937_64 rng( 42 );
  for ( int trial = 0; trial < 5; ++trial )
  {
    auto const mu = testing::random_schedule( rng, 4 );
    CHECK( is_bijective_substepwise( testing::negation( 4 ), mu ) );
    CHECK( is_bijective_bruteforce( testing::negation( 4 ), mu ) );
  }
  Network zero_first( { Expr::constant( false ), Expr::var( 1 ) } );
  CHECK_FALSE( is_bijective_substepwise( zero_first, mu_par( 2 ) ) );
  CHECK_FALSE( is_bijective_bruteforce( zero_first, mu_par( 2 ) ) );
}

TEST_CASE( "bijectivity lemma on random pairs" )
{
  std::mt19937_64 rng( 43 );
  int bij = 0;
  for ( int trial = 0; trial < 100; ++trial )
  {
    auto const n = std::uniform_int_distribution<std::size_t>( 1, 4 )( rng );
    auto const net = testing::random_network( rng, n, 1 );
    auto const mu = testing::random_schedule( rng, n );
    bool const a = is_bijective_substepwise( net, mu );
    CHECK( a == is_bijective_bruteforce( net, mu ) );
    CHECK( a == is_bijective_substepwise( net, mu, { .policy = ExecPolicy::serial } ) );
    bij += a;
  }
  CHECK( bij > 0 );
}

TEST_CASE( "identity and constant" )
{
  CHECK( is_identity( Network::identity( 4 ), mu_par( 4 ) ) );
  auto const d = is_identity( testing::n1(), testing::mu1() );
  CHECK_FALSE( d.answer );
  REQUIRE( d.witness );
  CHECK( step( testing::n1(), testing::mu1(), *d.witness ) != *d.witness );

  auto const c = is_constant( testing::constant_zero( 3 ), mu_par( 3 ) );
  CHECK( c.answer );
  CHECK( *c.witness == Configuration( 3 ) );
  CHECK_FALSE( is_constant( Network::identity( 2 ), mu_par( 2 ) ) );
}

TEST_CASE( "identity implies bijective; constant witness is a fixed point" )
{
  std::mt19937_64 rng( 44 );
  for ( int trial = 0; trial < 60; ++trial )
  {
    auto const n = std::uniform_int_distribution<std::size_t>( 1, 4 )( rng );
    auto const net = testing::random_network( rng, n, 1 );
    auto const mu = testing::random_schedule( rng, n );
    if ( is_identity( net, mu ) )
      CHECK( is_bijective_substepwise( net, mu ) );
    if ( auto c = is_constant( net, mu ) )
      CHECK( is_fixed_point( net, mu, *c.witness ) );
  }
}

TEST_CASE( "subdynamics basics" )
{
  PatternGraph loop{ { "a" }, { { 0, 0 } } };
  PatternGraph two{ { "a", "b" }, { { 0, 1 }, { 1, 0 } } };
  PatternGraph path{ { "a", "b", "c" }, { { 0, 1 }, { 1, 2 } } };
  auto const neg = testing::negation( 2 );
  CHECK_FALSE( subdynamics( neg, mu_par( 2 ), loop ) );
  auto const r = subdynamics( neg, mu_par( 2 ), two );
  CHECK( r.answer );
  REQUIRE( r.embedding.size() == 2u );
  CHECK( r.embedding[0] != r.embedding[1] );
  CHECK( subdynamics( Network::identity( 2 ), mu_par( 2 ), loop ) );

  PatternGraph branching{ { "a", "b", "c" }, { { 0, 1 }, { 0, 2 } } };
  auto const b = subdynamics( neg, mu_par( 2 ), branching );
  CHECK_FALSE( b.answer );
  CHECK_FALSE( b.diagnostic.empty() );
  CHECK_THROWS_AS( branching.to_functional(), Error );
  (void)path;
}

TEST_CASE( "subdynamics against first-order characterizations" )
{
  PatternGraph loop{ { "a" }, { { 0, 0 } } };
  PatternGraph two{ { "a", "b" }, { { 0, 1 }, { 1, 0 } } };
  PatternGraph path{ { "a", "b", "c" }, { { 0, 1 }, { 1, 2 } } };
  std::mt19937_64 rng( 45 );
  for ( int trial = 0; trial < 60; ++trial )
  {
    auto const n = std::uniform_int_distribution<std::size_t>( 1, 3 )( rng );
    auto const net = testing::random_network( rng, n );
    auto const mu = testing::random_schedule( rng, n );
    auto const f = transition_graph( net, mu ).out;
    bool fixed = false, two_cycle = false, two_path = false;
    for ( std::uint64_t x = 0; x < f.size(); ++x )
    {
      fixed |= f[x] == x;
      two_cycle |= f[x] != x && f[f[x]] == x;
      /* x -> y -> z with three distinct configurations */
      two_path |= f[x] != x && f[f[x]] != f[x] && f[f[x]] != x;
    }
    CHECK( subdynamics( net, mu, loop ).answer == fixed );
    CHECK( subdynamics( net, mu, two ).answer == two_cycle );
    CHECK( subdynamics( net, mu, path ).answer == two_path );
  }
}

TEST_CASE( "a transition graph embeds in itself by the identity" )
{
  std::mt19937_64 rng( 46 );
  for ( int trial = 0; trial < 10; ++trial )
  {
    auto const n = std::uniform_int_distribution<std::size_t>( 1, 4 )( rng );
    auto const net = testing::random_network( rng, n );
    auto const mu = testing::random_schedule( rng, n );
    auto const g = transition_graph( net, mu );
    auto const r = subdynamics( net, mu, g );
    REQUIRE( r.answer );
    for ( std::uint64_t v = 0; v < g.size(); ++v )
      CHECK( g.out[r.embedding[v]] == r.embedding[g.out[v]] );
  }
}

TEST_CASE( "XOR identity search" )
{
  try
  {
    (void)search_xor_identity( 1 );
    FAIL( "expected exhaustion" );
  }
  catch ( Error const& e )
  {
    CHECK( e.kind() == ErrorKind::search_exhausted );
  }
  for ( std::size_t n : { 3u, 5u } )
  {
    auto const found = search_xor_identity( n );
    CHECK( found.net.size() == n );
    CHECK( is_identity( found.net, found.schedule ) );
    CHECK( influence_graph( found.net ).has_non_loop_arc() );
  }
}
