#include "ban/dynamics.hpp"

#include "ban/error.hpp"
#include "ban/kernels.hpp"

#include <unordered_map>

namespace ban
{

Configuration substep( Network const& net, std::span<std::size_t const> block, Configuration const& x )
{
  if ( x.size() != net.size() )
    throw Error( ErrorKind::input, "configuration of size " + std::to_string( x.size() ) + " for a network of size " + std::to_string( net.size() ) );
  Configuration y = x;
  for ( auto i : block )
  {
    if ( i >= net.size() )
      throw Error( ErrorKind::range, "block contains automaton " + std::to_string( i ) );
    y.set( i, eval( net.local( i ), x ) );
  }
  return y;
}

namespace
{

constexpr std::uint64_t block_cache_limit = 1u << 16;

std::vector<std::uint64_t> to_lanes( Configuration const& x )
{
  std::vector<std::uint64_t> state( x.size() );
  for ( std::size_t j = 0; j < x.size(); ++j )
    state[j] = x[j] ? 1u : 0u;
  return state;
}

Configuration from_lanes( std::vector<std::uint64_t> const& state )
{
  Configuration x( state.size() );
  for ( std::size_t j = 0; j < state.size(); ++j )
    x.set( j, state[j] & 1u );
  return x;
}

} // namespace

Simulator::Simulator( Network net, BlockParallelSchedule mu, std::uint64_t budget )
    : net_( std::move( net ) ), mu_( std::move( mu ) ), compiled_( net_ ), length_( lcm_length( mu_ ) ), budget_( budget )
{
  if ( mu_.size() != net_.size() )
    throw Error( ErrorKind::input, "schedule over " + std::to_string( mu_.size() ) + " automata for a network of size " + std::to_string( net_.size() ) );
  if ( length_ <= block_cache_limit )
    blocks_ = phi( mu_, block_cache_limit ).blocks;
}

std::uint64_t Simulator::substeps_per_step() const
{
  if ( length_ > budget_ )
    throw Error( ErrorKind::capacity, "one step takes " + length_.str() + " substeps, above the budget of " + std::to_string( budget_ ) );
  return static_cast<std::uint64_t>( length_ );
}

void Simulator::check_input( Configuration const& x ) const
{
  if ( x.size() != net_.size() )
    throw Error( ErrorKind::input, "configuration of size " + std::to_string( x.size() ) + " for a network of size " + std::to_string( net_.size() ) );
}

void Simulator::substep_lanes( Block const& block, std::uint64_t* state, std::uint64_t* scratch ) const
{
  auto* fresh = scratch + compiled_.scratch_size();
  for ( std::size_t k = 0; k < block.size(); ++k )
    fresh[k] = compiled_.eval( block[k], state, scratch );
  for ( std::size_t k = 0; k < block.size(); ++k )
    state[block[k]] = fresh[k];
}

void Simulator::step_lanes( std::uint64_t* state, std::uint64_t* scratch ) const
{
  auto const l = substeps_per_step();
  if ( !blocks_.empty() )
  {
    for ( auto const& w : blocks_ )
      substep_lanes( w, state, scratch );
    return;
  }
  BlockCursor cur( mu_ );
  for ( std::uint64_t t = 0; t < l; ++t, cur.advance() )
    substep_lanes( cur.block(), state, scratch );
}

Configuration Simulator::step( Configuration const& x, std::vector<TraceEntry>* trace ) const
{
  check_input( x );
  auto state = to_lanes( x );
  std::vector<std::uint64_t> scratch( scratch_words() );
  if ( !trace )
  {
    step_lanes( state.data(), scratch.data() );
    return from_lanes( state );
  }
  auto const l = substeps_per_step();
  BlockCursor cur( mu_ );
  for ( std::uint64_t t = 0; t < l; ++t, cur.advance() )
  {
    substep_lanes( cur.block(), state.data(), scratch.data() );
    trace->push_back( { t, cur.block(), from_lanes( state ) } );
  }
  return from_lanes( state );
}

Configuration Simulator::substep_at( Configuration const& x, BigInt const& t ) const
{
  check_input( x );
  if ( t < 0 || t > length_ )
    throw Error( ErrorKind::range, "substep index " + t.str() + " outside [0, l] with l = " + length_.str() );
  if ( t > budget_ )
    throw Error( ErrorKind::capacity, "substep index " + t.str() + " above the budget of " + std::to_string( budget_ ) );
  auto const count = static_cast<std::uint64_t>( t );
  auto state = to_lanes( x );
  std::vector<std::uint64_t> scratch( scratch_words() );
  BlockCursor cur( mu_ );
  for ( std::uint64_t s = 0; s < count; ++s, cur.advance() )
    substep_lanes( cur.block(), state.data(), scratch.data() );
  return from_lanes( state );
}

Configuration Simulator::iterate( Configuration const& x, std::uint64_t k ) const
{
  check_input( x );
  if ( k == 0u )
    return x;
  if ( BigInt( k ) * length_ > budget_ )
    throw Error( ErrorKind::capacity, std::to_string( k ) + " steps of " + length_.str() + " substeps exceed the budget of " + std::to_string( budget_ ) );
  auto state = to_lanes( x );
  std::vector<std::uint64_t> scratch( scratch_words() );
  for ( std::uint64_t s = 0; s < k; ++s )
    step_lanes( state.data(), scratch.data() );
  return from_lanes( state );
}

Configuration step( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, std::uint64_t budget,
                    std::vector<TraceEntry>* trace )
{
  return Simulator( net, mu, budget ).step( x, trace );
}

Configuration substep_at( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, BigInt const& t,
                          std::uint64_t budget )
{
  return Simulator( net, mu, budget ).substep_at( x, t );
}

Configuration iterate( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, std::uint64_t k,
                       std::uint64_t budget )
{
  return Simulator( net, mu, budget ).iterate( x, k );
}

Configuration reference_step( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, std::uint64_t budget )
{
  auto const l = lcm_length( mu );
  if ( l > budget )
    throw Error( ErrorKind::capacity, "one step takes " + l.str() + " substeps, above the budget" );
  Configuration y = x;
  BlockCursor cur( mu );
  for ( auto t = static_cast<std::uint64_t>( l ); t > 0; --t, cur.advance() )
    y = substep( net, cur.block(), y );
  return y;
}

Orbit orbit( Simulator const& sim, Configuration const& x, std::uint64_t max_steps )
{
  std::unordered_map<Configuration, std::size_t> seen;
  std::vector<Configuration> path;
  Configuration cur = x;
  for ( std::uint64_t s = 0;; ++s )
  {
    if ( auto it = seen.find( cur ); it != seen.end() )
    {
      Orbit o;
      o.tail.assign( path.begin(), path.begin() + static_cast<std::ptrdiff_t>( it->second ) );
      o.cycle.assign( path.begin() + static_cast<std::ptrdiff_t>( it->second ), path.end() );
      return o;
    }
    if ( s == max_steps )
      throw Error( ErrorKind::capacity, "orbit did not close within " + std::to_string( max_steps ) + " steps" );
    seen.emplace( cur, path.size() );
    path.push_back( cur );
    cur = sim.step( cur );
  }
}

Orbit orbit( Network const& net, BlockParallelSchedule const& mu, Configuration const& x )
{
  Simulator sim( net, mu );
  auto const cap = net.size() < 24u ? ( std::uint64_t{ 1 } << net.size() ) : ( std::uint64_t{ 1 } << 24 );
  return orbit( sim, x, cap );
}

bool FunctionalGraph::is_total() const noexcept
{
  for ( auto w : out )
    if ( w == none )
      return false;
  return true;
}

std::size_t FunctionalGraph::arc_count() const noexcept
{
  std::size_t c = 0;
  for ( auto w : out )
    c += w != none;
  return c;
}

std::string FunctionalGraph::label( std::uint64_t v ) const
{
  if ( bits > 0u )
    return Configuration::from_rank( bits, v ).to_string();
  if ( v < names.size() )
    return names[v];
  return std::to_string( v );
}

FunctionalGraph transition_graph( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  if ( net.size() > options.limit )
    throw Error( ErrorKind::capacity, "transition graph over 2^" + std::to_string( net.size() ) + " configurations exceeds the exhaustive limit 2^" + std::to_string( options.limit ) );
  Simulator sim( net, mu, options.budget );
  FunctionalGraph g;
  g.bits = net.size();
  g.out = kernels::image_ranks( sim, Subspace::full( net.size() ), options.policy );
  return g;
}

} // namespace ban
