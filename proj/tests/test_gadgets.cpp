#include "support.hpp"

#include "ban/error.hpp"
#include "ban/kernels.hpp"

#include <doctest.h>

using namespace ban;

namespace
{

Configuration repeat( std::string const& prefix, std::size_t q, std::string const& suffix )
{
  return Configuration::from_string( std::string( q, prefix[0] ) + suffix );
}

void check_layout( GadgetInstance const& g )
{
  std::size_t next = 0;
  for ( auto const& r : g.layout )
  {
    CHECK( r.first == next );
    CHECK( r.count > 0u );
    next += r.count;
  }
  CHECK( next == g.net.size() );
  auto const& P = g.range( "P" );
  for ( std::size_t j = P.count; j < g.net.size(); ++j )
    CHECK( g.schedule.oblocks()[g.schedule.oblock_of( j )].size() == 1u );
}

std::vector<IterCvpInstance> corpus( std::uint64_t seed, std::size_t n, int count )
{
  std::mt19937_64 rng( seed );
  std::vector<IterCvpInstance> out;
  for ( int k = 0; k < count; ++k )
    out.push_back( testing::random_cvp( rng, n ) );
  return out;
}

} // namespace

TEST_CASE( "iter_cvp oracle examples" )
{
  IterCvpInstance id{ { Expr::var( 0 ), Expr::var( 1 ) }, Configuration::from_string( "10" ), 0 };
  CHECK( iter_cvp_oracle( id ) );
  id.start = Configuration::from_string( "01" );
  CHECK_FALSE( iter_cvp_oracle( id ) );
  auto const inc = testing::increment_cvp( 2, Configuration::from_string( "00" ), 0 );
  CHECK( iter_cvp_oracle( inc ) );
  CHECK( Network( inc.circuit ).parallel_image( Configuration::from_string( "01" ) ).to_string() == "10" );
  IterCvpInstance bad{ { Expr::var( 0 ) }, Configuration::from_string( "1" ), 2 };
  CHECK_THROWS_AS( iter_cvp_oracle( bad ), Error );
}

TEST_CASE( "counter network" )
{
  auto const g = build_counter_network( 3 );
  CHECK( g.net.size() == 20u );
  check_layout( g );
  auto const target = repeat( "0", 17, "111" );
  CHECK( g.configuration( "y" ) == target );
  CHECK( step( g.net, g.schedule, repeat( "0", 17, "010" ) ) == target );
  CHECK( step( g.net, g.schedule, repeat( "1", 17, "000" ) ) == target );
  CHECK( is_fixed_point( g.net, g.schedule, target ) );
  CHECK( reachable( g.net, g.schedule, repeat( "0", 17, "010" ), target ) );
  auto const o = orbit( g.net, g.schedule, repeat( "0", 17, "010" ) );
  CHECK( o.tail.size() == 1u );
  CHECK( o.period() == 1u );
  CHECK( o.cycle[0] == target );

  /* five substeps from counter value 2 saturate at 7 */
  auto const mid = substep_at( g.net, g.schedule, repeat( "0", 17, "010" ), 5 );
  CHECK( mid.to_string().substr( 17 ) == "111" );
  auto const four = substep_at( g.net, g.schedule, repeat( "0", 17, "010" ), 4 );
  CHECK( four.to_string().substr( 17 ) == "110" );

  auto const g2 = build_counter_network( 2 );
  auto const c = is_constant( g2.net, g2.schedule );
  REQUIRE( c.answer );
  CHECK( c.witness->to_string() == "0000011" );
}

TEST_CASE( "step-bit reduction" )
{
  for ( std::size_t n : { 2u, 3u } )
    for ( auto const& inst : corpus( 51 + n, n, 20 ) )
    {
      auto const g = reduce_step_bit( inst );
      check_layout( g );
      auto const x = g.configuration( "x" );
      auto const y = step( g.net, g.schedule, x );
      bool const positive = iter_cvp_oracle( inst );
      CHECK( image_bit( g.net, g.schedule, x, g.range( "R" ).first ) == positive );
      CHECK( y == g.configuration( positive ? "y+" : "y-" ) );
      CHECK( g.configuration( "y-" ) == x );
      if ( !positive )
        CHECK( is_fixed_point( g.net, g.schedule, x ) );
    }
}

TEST_CASE( "step-bit counter sweeps every value once per step" )
{
  auto const inst = testing::increment_cvp( 2, Configuration::from_string( "00" ), 0 );
  auto const g = reduce_step_bit( inst );
  auto const B = g.range( "B" );
  auto const l = std::stoull( *g.param( "l" ) );
  for ( std::uint64_t b0 = 0; b0 < l; ++b0 )
  {
    auto x = g.configuration( "x" );
    for ( std::size_t k = 0; k < B.count; ++k )
      x.set( B.first + k, ( b0 >> ( B.count - 1u - k ) ) & 1u );
    std::vector<TraceEntry> trace;
    auto const y = step( g.net, g.schedule, x, default_substep_budget, &trace );
    std::vector<int> seen( l, 0 );
    for ( auto const& e : trace )
    {
      std::uint64_t v = 0;
      for ( std::size_t k = 0; k < B.count; ++k )
        v = v * 2u + e.after[B.first + k];
      REQUIRE( v < l );
      ++seen[v];
    }
    for ( auto s : seen )
      CHECK( s == 1 );
    for ( std::size_t k = 0; k < B.count; ++k )
      CHECK( y[B.first + k] == x[B.first + k] );
  }
}

TEST_CASE( "preimage reduction" )
{
  int pos = 0, neg = 0;
  for ( auto const& inst : corpus( 61, 2, 30 ) )
  {
    auto const g = reduce_preimage( inst );
    check_layout( g );
    bool const positive = iter_cvp_oracle( inst );
    auto const d = has_preimage( g.net, g.schedule, g.configuration( "y" ) );
    CHECK( d.answer == positive );
    if ( positive )
      CHECK( step( g.net, g.schedule, g.configuration( "witness" ) ) == g.configuration( "y" ) );
    ( positive ? pos : neg )++;
  }
  CHECK( pos > 0 );
  CHECK( neg > 0 );
}

TEST_CASE( "fixed-point reduction" )
{
  for ( auto const& inst : corpus( 71, 2, 30 ) )
  {
    auto const g = reduce_fixed_point( inst );
    bool const positive = iter_cvp_oracle( inst );
    CHECK( exists_fixed_point( g.net, g.schedule ).answer == positive );
    auto const expected = Configuration( g.range( "D" ).first ).append( inst.start ).append( Configuration( 1 ) );
    CHECK( g.configuration( "x" ) == expected );
    if ( positive )
      CHECK( is_fixed_point( g.net, g.schedule, g.configuration( "x" ) ) );
  }
}

TEST_CASE( "limit-cycle reduction" )
{
  for ( std::uint64_t k = 1; k <= 3; ++k )
    for ( auto const& inst : corpus( 80 + k, 2, 12 ) )
    {
      auto const g = reduce_limit_cycle( inst, k );
      check_layout( g );
      bool const positive = iter_cvp_oracle( inst );
      CHECK( exists_limit_cycle( g.net, g.schedule, k ).answer == positive );
      auto const lengths = cycle_lengths( g.net, g.schedule );
      for ( auto c : lengths )
        CHECK( c % k == 0u );
      if ( positive )
      {
        Simulator sim( g.net, g.schedule );
        for ( std::uint64_t i = 0; i < k; ++i )
          CHECK( sim.step( g.configuration( "c" + std::to_string( i ) ) ) == g.configuration( "c" + std::to_string( ( i + 1u ) % k ) ) );
      }
    }
}

TEST_CASE( "constant reduction" )
{
  for ( auto const& inst : corpus( 91, 2, 30 ) )
  {
    auto const g = reduce_constant( inst );
    bool const positive = iter_cvp_oracle( inst );
    auto const c = is_constant( g.net, g.schedule );
    CHECK( c.answer == positive );
    if ( positive )
      CHECK( *c.witness == g.configuration( "y" ) );
    auto y = g.configuration( "y" );
    y.set( g.range( "R" ).first, positive );
    CHECK( step( g.net, g.schedule, g.configuration( "x" ) ) == y );
  }
  /* a nonzero counter saturates whatever the instance */
  std::mt19937_64 rng( 92 );
  for ( auto const& inst : corpus( 93, 3, 10 ) )
  {
    auto const g = reduce_constant( inst );
    auto const B = g.range( "B" );
    for ( int s = 0; s < 20; ++s )
    {
      auto x = testing::random_configuration( rng, g.net.size() );
      x.set( B.first + rng() % B.count, true );
      CHECK( step( g.net, g.schedule, x ) == g.configuration( "y" ) );
    }
  }
}

TEST_CASE( "ModP identity reduction" )
{
  for ( std::size_t i : { 1u, 2u } )
  {
    auto const p = nth_prime( i );
    for ( std::uint64_t table = 0; table < 16; ++table )
    {
      std::vector<Expr> minterms;
      for ( std::uint64_t v = 0; v < 4; ++v )
        if ( ( table >> v ) & 1u )
          minterms.push_back( ( ( v >> 1 ) & 1u ? Expr::var( 0 ) : !Expr::var( 0 ) ) & ( v & 1u ? Expr::var( 1 ) : !Expr::var( 1 ) ) );
      Expr psi = minterms.empty() ? Expr::constant( false ) : minterms.front();
      for ( std::size_t t = 1; t < minterms.size(); ++t )
        psi = psi | minterms[t];
      CHECK( model_count( psi, 2 ) == static_cast<std::uint64_t>( std::popcount( table ) ) );
      for ( std::uint64_t m = 0; m < p; ++m )
      {
        auto const g = reduce_modp_identity( psi, 2, m, i );
        bool const expect = model_count( psi, 2 ) % p == m;
        CHECK( is_identity( g.net, g.schedule ).answer == expect );
      }
    }
  }
  auto const g = reduce_modp_identity( Expr::var( 0 ) & Expr::var( 1 ), 2, 1, 1 );
  CHECK( is_identity( g.net, g.schedule ) );
  CHECK_FALSE( is_identity( reduce_modp_identity( Expr::var( 0 ) & Expr::var( 1 ), 2, 0, 1 ).net, g.schedule ) );
}

TEST_CASE( "TM compiler" )
{
  TuringMachine tm;
  tm.states = { "scan", "yes" };
  tm.alphabet = { "b", "a" };
  tm.input_alphabet = tm.alphabet;
  tm.initial = 0;
  tm.accept = 1;
  tm.delta[{ 0, 0 }] = { 0, 0, TuringMachine::Move::right };
  tm.delta[{ 0, 1 }] = { 1, 1, TuringMachine::Move::stay };
  CHECK_FALSE( tm_accepts( tm, tm.encode_word( { "b", "b" } ) ) );
  CHECK( tm_accepts( tm, tm.encode_word( { "b", "a" } ) ) );
  CHECK_FALSE( iter_cvp_oracle( tm_to_circuit( tm, tm.encode_word( { "b", "b" } ) ) ) );
  CHECK( iter_cvp_oracle( tm_to_circuit( tm, tm.encode_word( { "b", "a" } ) ) ) );

  TuringMachine halt;
  halt.states = { "q" };
  halt.alphabet = { "0" };
  halt.initial = 0;
  halt.accept = 0;
  auto const inst = tm_to_circuit( halt, { 0 } );
  CHECK_FALSE( inst.start[inst.output] );
  CHECK( Network( inst.circuit ).parallel_image( inst.start )[inst.output] );

  TuringMachine loop = tm;
  loop.delta[{ 0, 0 }] = { 0, 0, TuringMachine::Move::stay };
  CHECK_FALSE( tm_accepts( loop, loop.encode_word( { "b", "a" } ) ) );
  CHECK_FALSE( iter_cvp_oracle( tm_to_circuit( loop, loop.encode_word( { "b", "a" } ) ) ) );
}

TEST_CASE( "reaction systems" )
{
  ReactionSystem empty{ { "a", "b" }, {} };
  auto const z = reaction_to_ban( empty );
  CHECK( z.local( 0 ).is_const( false ) );
  ReactionSystem one{ { "a", "b" }, { { { 0 }, {}, { 1 } } } };
  auto const f = reaction_to_ban( one );
  CHECK( f.local( 0 ).is_const( false ) );
  CHECK( f.local( 1 ).structurally_equal( Expr::var( 0 ) ) );

  std::mt19937_64 rng( 101 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    ReactionSystem rs;
    auto const n = std::uniform_int_distribution<std::size_t>( 1, 6 )( rng );
    for ( std::size_t e = 0; e < n; ++e )
      rs.entities.push_back( "e" + std::to_string( e ) );
    auto const count = std::uniform_int_distribution<int>( 0, 5 )( rng );
    for ( int r = 0; r < count; ++r )
    {
      Reaction re;
      for ( std::size_t e = 0; e < n; ++e )
      {
        auto const roll = rng() % 6u;
        if ( roll == 0u )
          re.reactants.push_back( e );
        else if ( roll == 1u )
          re.inhibitors.push_back( e );
        if ( rng() % 3u == 0u )
          re.products.push_back( e );
      }
      rs.reactions.push_back( re );
    }
    auto const net = reaction_to_ban( rs );
    std::vector<bool> state( n );
    Configuration x( n );
    for ( std::size_t e = 0; e < n; ++e )
    {
      state[e] = rng() & 1u;
      x.set( e, state[e] );
    }
    for ( int t = 0; t < 10; ++t )
    {
      state = reaction_step( rs, state );
      x = step( net, mu_par( n ), x );
      for ( std::size_t e = 0; e < n; ++e )
        CHECK( x[e] == state[e] );
    }
  }
}

TEST_CASE( "subdynamics reduction" )
{
  /* 0 <-> 1 with 2 -> 0 */
  FunctionalGraph tail;
  tail.out = { 1, 0, 0 };
  tail.names = { "a", "b", "c" };
  int pos = 0, neg = 0;
  for ( auto const& inst : corpus( 111, 2, 12 ) )
  {
    auto const g = reduce_subdynamics( tail, inst );
    check_layout( g );
    bool const positive = iter_cvp_oracle( inst );
    auto const r = subdynamics( g.net, g.schedule, tail );
    CHECK( r.answer == positive );
    if ( positive )
    {
      Simulator sim( g.net, g.schedule );
      for ( std::size_t v = 0; v < 3; ++v )
        CHECK( sim.step( g.configuration( "pi:" + tail.label( v ) ) ) == g.configuration( "pi:" + tail.label( tail.out[v] ) ) );
    }
    ( positive ? pos : neg )++;
  }
  CHECK( pos > 0 );
  CHECK( neg > 0 );
}

TEST_CASE( "subdynamics reduction, loops" )
{
  FunctionalGraph loop;
  loop.out = { 0 };
  FunctionalGraph three;
  three.out = { 0, 1, 2 };
  for ( auto const& inst : corpus( 121, 2, 8 ) )
  {
    bool const positive = iter_cvp_oracle( inst );
    auto const a = reduce_subdynamics( loop, inst );
    CHECK( subdynamics( a.net, a.schedule, loop ).answer == positive );
    auto const b = reduce_subdynamics( three, inst );
    CHECK( subdynamics( b.net, b.schedule, three ).answer == positive );
  }
  FunctionalGraph partial;
  partial.out = { FunctionalGraph::none };
  CHECK_THROWS_AS( reduce_subdynamics( partial, corpus( 1, 2, 1 )[0] ), Error );
}
