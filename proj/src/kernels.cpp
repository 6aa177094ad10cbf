#include "ban/kernels.hpp"

#include "ban/error.hpp"

#include <algorithm>

#include <omp.h>

namespace ban
{

Subspace Subspace::full( std::size_t n )
{
  Subspace s;
  s.base = Configuration( n );
  s.free.resize( n );
  for ( std::size_t j = 0; j < n; ++j )
    s.free[j] = j;
  return s;
}

Subspace Subspace::fixing( Configuration base, std::vector<std::size_t> free )
{
  for ( auto j : free )
    if ( j >= base.size() )
      throw Error( ErrorKind::range, "free automaton " + std::to_string( j ) + " outside the configuration" );
  return { std::move( base ), std::move( free ) };
}

Configuration Subspace::at( std::uint64_t k ) const
{
  Configuration x = base;
  auto const f = free.size();
  for ( std::size_t m = 0; m < f; ++m )
    x.set( free[m], ( k >> ( f - 1u - m ) ) & 1u );
  return x;
}

namespace kernels
{

namespace
{

constexpr std::uint64_t lane_patterns[6] = {
    0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull };

/* Loads 64 consecutive subspace indices into per-automaton lane words. */
class BatchLoader
{
public:
  explicit BatchLoader( Subspace const& space ) : space_( space ), bitpos_( space.base.size(), -1 )
  {
    auto const f = space.free.size();
    for ( std::size_t m = 0; m < f; ++m )
      bitpos_[space.free[m]] = static_cast<int>( f - 1u - m );
    total_ = space.size();
  }

  std::uint64_t batches() const noexcept { return ( total_ + 63u ) / 64u; }

  std::uint64_t valid_mask( std::uint64_t batch ) const noexcept
  {
    auto const remaining = total_ - batch * 64u;
    return remaining >= 64u ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << remaining ) - 1u );
  }

  void load( std::uint64_t batch, std::uint64_t* state ) const noexcept
  {
    auto const first = batch * 64u;
    for ( std::size_t j = 0; j < bitpos_.size(); ++j )
    {
      auto const b = bitpos_[j];
      if ( b < 0 )
        state[j] = space_.base[j] ? ~std::uint64_t{ 0 } : 0u;
      else if ( b < 6 )
        state[j] = lane_patterns[b];
      else
        state[j] = ( ( first >> b ) & 1u ) ? ~std::uint64_t{ 0 } : 0u;
    }
  }

private:
  Subspace const& space_;
  std::vector<int> bitpos_;
  std::uint64_t total_ = 0;
};

void store_ranks( std::uint64_t const* state, std::size_t n, std::uint64_t mask, std::uint64_t* out )
{
  for ( unsigned lane = 0; lane < 64u; ++lane )
  {
    if ( !( ( mask >> lane ) & 1u ) )
      break;
    std::uint64_t r = 0;
    for ( std::size_t j = 0; j < n; ++j )
      r = ( r << 1 ) | ( ( state[j] >> lane ) & 1u );
    out[lane] = r;
  }
}

template<typename Advance>
std::vector<std::uint64_t> map_ranks_parallel( Simulator const& sim, Subspace const& space, Advance&& advance )
{
  auto const n = sim.size();
  BatchLoader loader( space );
  std::vector<std::uint64_t> out( space.size() );
  auto const batches = static_cast<std::int64_t>( loader.batches() );
#pragma omp parallel
  {
    std::vector<std::uint64_t> state( n ), scratch( sim.scratch_words() );
#pragma omp for schedule( static )
    for ( std::int64_t b = 0; b < batches; ++b )
    {
      loader.load( static_cast<std::uint64_t>( b ), state.data() );
      advance( state.data(), scratch.data() );
      store_ranks( state.data(), n, loader.valid_mask( static_cast<std::uint64_t>( b ) ), out.data() + b * 64 );
    }
  }
  return out;
}

void check_rank_width( Simulator const& sim )
{
  if ( sim.size() > 63u )
    throw Error( ErrorKind::capacity, "rank tables need at most 63 automata" );
}

} // namespace

std::vector<std::uint64_t> image_ranks( Simulator const& sim, Subspace const& space, ExecPolicy policy )
{
  check_rank_width( sim );
  sim.substeps_per_step();
  if ( policy == ExecPolicy::serial )
  {
    std::vector<std::uint64_t> out( space.size() );
    for ( std::uint64_t k = 0; k < out.size(); ++k )
      out[k] = reference_step( sim.network(), sim.schedule(), space.at( k ), sim.budget() ).rank();
    return out;
  }
  return map_ranks_parallel( sim, space, [&]( std::uint64_t* state, std::uint64_t* scratch ) { sim.step_lanes( state, scratch ); } );
}

std::vector<std::uint64_t> block_image_ranks( Simulator const& sim, Block const& block, ExecPolicy policy )
{
  check_rank_width( sim );
  auto const space = Subspace::full( sim.size() );
  if ( policy == ExecPolicy::serial )
  {
    std::vector<std::uint64_t> out( space.size() );
    for ( std::uint64_t k = 0; k < out.size(); ++k )
      out[k] = substep( sim.network(), block, space.at( k ) ).rank();
    return out;
  }
  return map_ranks_parallel( sim, space, [&]( std::uint64_t* state, std::uint64_t* scratch ) { sim.substep_lanes( block, state, scratch ); } );
}

bool influences( Simulator const& sim, std::size_t j, std::size_t i, ExecPolicy policy )
{
  auto const& net = sim.network();
  auto const space = Subspace::full( net.size() );
  if ( policy == ExecPolicy::serial )
  {
    for ( std::uint64_t k = 0; k < space.size(); ++k )
    {
      auto x = space.at( k );
      auto const a = eval( net.local( i ), x );
      x.flip( j );
      if ( a != eval( net.local( i ), x ) )
        return true;
    }
    return false;
  }

  BatchLoader loader( space );
  auto const batches = static_cast<std::int64_t>( loader.batches() );
  bool found = false;
#pragma omp parallel
  {
    std::vector<std::uint64_t> state( net.size() ), scratch( sim.scratch_words() );
#pragma omp for schedule( static )
    for ( std::int64_t b = 0; b < batches; ++b )
    {
      bool done;
#pragma omp atomic read
      done = found;
      if ( done )
        continue;
      loader.load( static_cast<std::uint64_t>( b ), state.data() );
      auto const before = sim.compiled().eval( i, state.data(), scratch.data() );
      state[j] = ~state[j];
      auto const after = sim.compiled().eval( i, state.data(), scratch.data() );
      if ( ( before ^ after ) & loader.valid_mask( static_cast<std::uint64_t>( b ) ) )
      {
#pragma omp atomic write
        found = true;
      }
    }
  }
  return found;
}

std::uint64_t first_moved( Simulator const& sim, Subspace const& space, ExecPolicy policy )
{
  sim.substeps_per_step();
  if ( policy == ExecPolicy::serial )
  {
    for ( std::uint64_t k = 0; k < space.size(); ++k )
    {
      auto const x = space.at( k );
      if ( reference_step( sim.network(), sim.schedule(), x, sim.budget() ) != x )
        return k;
    }
    return none;
  }

  auto const n = sim.size();
  BatchLoader loader( space );
  auto const batches = static_cast<std::int64_t>( loader.batches() );
  std::uint64_t best = none;
#pragma omp parallel
  {
    std::vector<std::uint64_t> state( n ), start( n ), scratch( sim.scratch_words() );
#pragma omp for schedule( static ) reduction( min : best )
    for ( std::int64_t b = 0; b < batches; ++b )
    {
      auto const first = static_cast<std::uint64_t>( b ) * 64u;
      if ( first >= best )
        continue;
      loader.load( static_cast<std::uint64_t>( b ), state.data() );
      std::copy( state.begin(), state.end(), start.begin() );
      sim.step_lanes( state.data(), scratch.data() );
      std::uint64_t diff = 0;
      for ( std::size_t j = 0; j < n; ++j )
        diff |= state[j] ^ start[j];
      diff &= loader.valid_mask( static_cast<std::uint64_t>( b ) );
      if ( diff )
        best = std::min<std::uint64_t>( best, first + static_cast<std::uint64_t>( __builtin_ctzll( diff ) ) );
    }
  }
  return best;
}

} // namespace kernels

} // namespace ban
