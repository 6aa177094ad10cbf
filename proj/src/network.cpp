#include "ban/network.hpp"

#include "ban/dynamics.hpp"
#include "ban/error.hpp"
#include "ban/kernels.hpp"

#include <algorithm>

namespace ban
{

Network::Network( std::vector<Expr> locals ) : locals_( std::move( locals ) )
{
  auto const n = locals_.size();
  for ( std::size_t i = 0; i < n; ++i )
  {
    auto const w = locals_[i].input_width();
    if ( w > n )
      throw Error( ErrorKind::width, "local function " + std::to_string( i ) + " reads x" + std::to_string( w - 1u ) +
                                         " in a network of size " + std::to_string( n ) );
  }
}

Network Network::identity( std::size_t n )
{
  std::vector<Expr> locals;
  locals.reserve( n );
  for ( std::size_t i = 0; i < n; ++i )
    locals.push_back( Expr::var( i ) );
  return Network( std::move( locals ) );
}

Configuration Network::parallel_image( Configuration const& x ) const
{
  if ( x.size() != size() )
    throw Error( ErrorKind::input, "configuration of size " + std::to_string( x.size() ) + " for a network of size " + std::to_string( size() ) );
  Configuration y( size() );
  for ( std::size_t i = 0; i < size(); ++i )
    y.set( i, eval( locals_[i], x ) );
  return y;
}

Configuration eval_local_set( Network const& net, std::span<std::size_t const> indices, Configuration const& x )
{
  std::vector<std::size_t> sorted( indices.begin(), indices.end() );
  std::sort( sorted.begin(), sorted.end() );
  Configuration y( sorted.size() );
  for ( std::size_t k = 0; k < sorted.size(); ++k )
  {
    if ( sorted[k] >= net.size() )
      throw Error( ErrorKind::range, "automaton " + std::to_string( sorted[k] ) + " outside the network" );
    y.set( k, eval( net.local( sorted[k] ), x ) );
  }
  return y;
}

bool InfluenceGraph::has_arc( std::size_t from, std::size_t to ) const
{
  return std::binary_search( arcs.begin(), arcs.end(), std::make_pair( from, to ) );
}

bool InfluenceGraph::has_non_loop_arc() const
{
  return std::any_of( arcs.begin(), arcs.end(), []( auto const& a ) { return a.first != a.second; } );
}

InfluenceGraph influence_graph( Network const& net, ExhaustiveOptions const& options )
{
  if ( net.size() > options.limit )
    throw Error( ErrorKind::capacity, "influence graph over 2^" + std::to_string( net.size() ) + " configurations exceeds the exhaustive limit 2^" + std::to_string( options.limit ) );
  Simulator sim( net, mu_par( net.size() ) );
  InfluenceGraph g;
  g.n = net.size();
  for ( std::size_t i = 0; i < net.size(); ++i )
    for ( auto j : net.local( i ).support() )
      if ( kernels::influences( sim, j, i, options.policy ) )
        g.arcs.emplace_back( j, i );
  std::sort( g.arcs.begin(), g.arcs.end() );
  return g;
}

} // namespace ban
