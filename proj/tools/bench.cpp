#include "ban/analysis.hpp"
#include "ban/gadgets.hpp"
#include "ban/kernels.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <random>

using namespace ban;

namespace
{

Expr random_local( std::mt19937_64& rng, std::size_t n, int depth )
{
  if ( depth == 0 )
    return Expr::var( rng() % n );
  auto const a = random_local( rng, n, depth - 1 );
  auto const b = random_local( rng, n, depth - 1 );
  switch ( rng() % 4u )
  {
  case 0:
    return a & b;
  case 1:
    return a | b;
  case 2:
    return a ^ b;
  default:
    return !a;
  }
}

template<class F>
double seconds( F&& f )
{
  auto const start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
}

void compare( char const* label, Simulator const& sim, int repeats )
{
  auto const space = Subspace::full( sim.size() );
  std::vector<std::uint64_t> serial, parallel;
  double ts = 1e300, tp = 1e300;
  for ( int r = 0; r < repeats; ++r )
  {
    ts = std::min( ts, seconds( [&] { serial = kernels::image_ranks( sim, space, ExecPolicy::serial ); } ) );
    tp = std::min( tp, seconds( [&] { parallel = kernels::image_ranks( sim, space, ExecPolicy::parallel ); } ) );
  }
  std::printf( "%-28s n=%2zu l=%-6s configs=%-9llu serial %9.4f s  parallel %9.4f s  speedup %6.1fx  %s\n", label, sim.size(),
               sim.length().str().c_str(), static_cast<unsigned long long>( space.size() ), ts, tp, ts / tp,
               serial == parallel ? "match" : "MISMATCH" );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "serial reference vs bit-sliced kernels on full transition tables", "ban_bench" };
  std::size_t n = 16;
  int repeats = 3;
  std::uint64_t seed = 1;
  app.add_option( "-n", n, "automata in the random network" )->check( CLI::Range( 2, 22 ) )->capture_default_str();
  app.add_option( "--repeats", repeats, "best of this many runs" )->check( CLI::PositiveNumber )->capture_default_str();
  app.add_option( "--seed", seed, "random network seed" )->capture_default_str();
  CLI11_PARSE( app, argc, argv );

  std::mt19937_64 rng( seed );
  std::vector<Expr> locals;
  for ( std::size_t i = 0; i < n; ++i )
    locals.push_back( random_local( rng, n, 3 ) );
  std::vector<std::vector<std::size_t>> oblocks;
  for ( std::size_t i = 0; i < n; i += 3 )
  {
    oblocks.emplace_back();
    for ( std::size_t j = i; j < std::min( n, i + 3 ); ++j )
      oblocks.back().push_back( j );
  }
  compare( "random network, o-blocks 3", Simulator( Network( locals ), BlockParallelSchedule::validate( oblocks, n ) ), repeats );
  compare( "random network, parallel", Simulator( Network( locals ), mu_par( n ) ), repeats );

  auto const counter = build_counter_network( 2 );
  compare( "counter n=2", Simulator( counter.net, counter.schedule ), repeats );
  std::mt19937_64 cvp_rng( seed );
  IterCvpInstance inst;
  for ( std::size_t j = 0; j < 2; ++j )
    inst.circuit.push_back( random_local( cvp_rng, 2, 2 ) );
  inst.start = Configuration( 2 );
  auto const lc = reduce_limit_cycle( inst, 3 );
  compare( "limit-cycle gadget k=3", Simulator( lc.net, lc.schedule ), repeats );
  return 0;
}
