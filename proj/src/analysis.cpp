#include "ban/analysis.hpp"

#include "ban/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace ban
{

namespace
{

void check_limit( std::size_t n, ExhaustiveOptions const& options )
{
  if ( n > options.limit )
    throw Error( ErrorKind::capacity, "scan over 2^" + std::to_string( n ) + " configurations exceeds the exhaustive limit 2^" + std::to_string( options.limit ) );
}

std::vector<std::uint64_t> image_table( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  check_limit( net.size(), options );
  Simulator sim( net, mu, options.budget );
  return kernels::image_ranks( sim, Subspace::full( net.size() ), options.policy );
}

struct Cycle
{
  std::uint64_t length;
  std::uint64_t representative;
};

/* every cycle of the functional graph `image` once */
std::vector<Cycle> find_cycles( std::vector<std::uint64_t> const& image )
{
  std::vector<Cycle> cycles;
  std::vector<std::uint32_t> walk( image.size(), 0 );
  std::vector<std::uint64_t> depth( image.size(), 0 );
  std::uint32_t id = 0;
  for ( std::uint64_t s = 0; s < image.size(); ++s )
  {
    if ( walk[s] )
      continue;
    ++id;
    std::uint64_t v = s, k = 0;
    while ( !walk[v] )
    {
      walk[v] = id;
      depth[v] = k++;
      v = image[v];
    }
    if ( walk[v] == id )
      cycles.push_back( { k - depth[v], v } );
  }
  return cycles;
}

} // namespace

bool is_step( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, Configuration const& y, std::uint64_t budget )
{
  if ( y.size() != net.size() )
    throw Error( ErrorKind::input, "target configuration of size " + std::to_string( y.size() ) );
  return step( net, mu, x, budget ) == y;
}

bool image_bit( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, std::size_t j, std::uint64_t budget )
{
  if ( j >= net.size() )
    throw Error( ErrorKind::range, "bit " + std::to_string( j ) + " outside the network" );
  return step( net, mu, x, budget )[j];
}

bool is_fixed_point( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, std::uint64_t budget )
{
  return step( net, mu, x, budget ) == x;
}

Decision has_preimage( Network const& net, BlockParallelSchedule const& mu, Configuration const& y, ExhaustiveOptions const& options )
{
  if ( y.size() != net.size() )
    throw Error( ErrorKind::input, "target configuration of size " + std::to_string( y.size() ) );
  auto const target = y.rank();
  auto const image = image_table( net, mu, options );
  for ( std::uint64_t x = 0; x < image.size(); ++x )
    if ( image[x] == target )
      return { true, Configuration::from_rank( net.size(), x ) };
  return {};
}

Decision exists_fixed_point( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  return exists_limit_cycle( net, mu, 1u, options );
}

Decision exists_limit_cycle( Network const& net, BlockParallelSchedule const& mu, std::uint64_t k, ExhaustiveOptions const& options )
{
  if ( k == 0u )
    throw Error( ErrorKind::input, "cycle length must be at least 1" );
  for ( auto const& c : find_cycles( image_table( net, mu, options ) ) )
    if ( k % c.length == 0u )
      return { true, Configuration::from_rank( net.size(), c.representative ) };
  return {};
}

Decision exists_cycle_of_length( Network const& net, BlockParallelSchedule const& mu, std::uint64_t k, ExhaustiveOptions const& options )
{
  if ( k == 0u )
    throw Error( ErrorKind::input, "cycle length must be at least 1" );
  for ( auto const& c : find_cycles( image_table( net, mu, options ) ) )
    if ( c.length == k )
      return { true, Configuration::from_rank( net.size(), c.representative ) };
  return {};
}

std::vector<std::uint64_t> cycle_lengths( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  std::vector<std::uint64_t> lengths;
  for ( auto const& c : find_cycles( image_table( net, mu, options ) ) )
    lengths.push_back( c.length );
  std::sort( lengths.begin(), lengths.end() );
  return lengths;
}

bool reachable( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, Configuration const& y,
                ExhaustiveOptions const& options )
{
  if ( y.size() != net.size() )
    throw Error( ErrorKind::input, "target configuration of size " + std::to_string( y.size() ) );
  Simulator sim( net, mu, options.budget );
  auto const cap = std::uint64_t{ 1 } << std::min<std::size_t>( net.size(), options.limit );
  std::unordered_set<Configuration> seen;
  Configuration cur = x;
  for ( std::uint64_t t = 0; t <= cap; ++t )
  {
    if ( cur == y )
      return true;
    if ( !seen.insert( cur ).second )
      return false;
    cur = sim.step( cur );
  }
  throw Error( ErrorKind::capacity, "orbit longer than 2^" + std::to_string( options.limit ) + " steps" );
}

bool is_bijective_substepwise( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  check_limit( net.size(), options );
  Simulator sim( net, mu, options.budget );
  auto const l = sim.substeps_per_step();
  std::set<Block> tested;
  std::vector<std::uint8_t> hit;
  BlockCursor cur( mu );
  for ( std::uint64_t t = 0; t < l; ++t, cur.advance() )
  {
    if ( !tested.insert( cur.block() ).second )
      continue;
    auto const image = kernels::block_image_ranks( sim, cur.block(), options.policy );
    hit.assign( image.size(), 0 );
    for ( auto y : image )
    {
      if ( hit[y] )
        return false;
      hit[y] = 1;
    }
  }
  return true;
}

bool is_bijective_bruteforce( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  auto const image = image_table( net, mu, options );
  std::vector<std::uint8_t> hit( image.size(), 0 );
  std::uint64_t distinct = 0;
  for ( auto y : image )
    if ( !hit[y] )
    {
      hit[y] = 1;
      ++distinct;
    }
  return distinct == image.size();
}

Decision is_identity_on( Simulator const& sim, Subspace const& space, ExhaustiveOptions const& options )
{
  check_limit( space.dimension(), options );
  auto const k = kernels::first_moved( sim, space, options.policy );
  if ( k == kernels::none )
    return { true, std::nullopt };
  return { false, space.at( k ) };
}

Decision is_identity( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  Simulator sim( net, mu, options.budget );
  return is_identity_on( sim, Subspace::full( net.size() ), options );
}

Decision is_constant_on( Simulator const& sim, Subspace const& space, ExhaustiveOptions const& options )
{
  check_limit( space.dimension(), options );
  auto const image = kernels::image_ranks( sim, space, options.policy );
  for ( auto y : image )
    if ( y != image.front() )
      return {};
  return { true, Configuration::from_rank( sim.size(), image.front() ) };
}

Decision is_constant( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options )
{
  Simulator sim( net, mu, options.budget );
  return is_constant_on( sim, Subspace::full( net.size() ), options );
}

std::optional<std::size_t> PatternGraph::branching_vertex() const
{
  std::vector<std::size_t> degree( size(), 0 );
  for ( auto const& [v, w] : arcs )
    if ( ++degree.at( v ) > 1u )
      return v;
  return std::nullopt;
}

FunctionalGraph PatternGraph::to_functional() const
{
  if ( auto v = branching_vertex() )
    throw Error( ErrorKind::not_functional, "vertex " + names[*v] + " has out-degree above one" );
  FunctionalGraph g;
  g.names = names;
  g.out.assign( size(), FunctionalGraph::none );
  for ( auto const& [v, w] : arcs )
    g.out[v] = w;
  return g;
}

namespace
{

enum class Choice
{
  any,
  image_of,
  preimage_of
};

struct Assignment
{
  std::size_t vertex;
  Choice choice;
  std::size_t other;
};

/* cycle vertices first (one free pick, the rest forced forward), sinks of
 * acyclic components next, then every tree vertex after its successor */
std::vector<Assignment> embedding_order( FunctionalGraph const& g, std::vector<std::vector<std::size_t>> const& in )
{
  auto const m = g.size();
  std::vector<Assignment> heads, trees;
  std::vector<std::uint8_t> placed( m, 0 );
  std::vector<std::uint32_t> walk( m, 0 );
  std::uint32_t id = 0;
  for ( std::size_t s = 0; s < m; ++s )
  {
    if ( walk[s] )
      continue;
    ++id;
    std::size_t v = s;
    while ( !walk[v] && g.out[v] != FunctionalGraph::none )
    {
      walk[v] = id;
      v = g.out[v];
    }
    if ( walk[v] == id && !placed[v] )
    {
      heads.push_back( { v, Choice::any, v } );
      placed[v] = 1;
      for ( auto u = g.out[v]; u != v; u = g.out[u] )
      {
        heads.push_back( { u, Choice::image_of, heads.back().vertex } );
        placed[u] = 1;
      }
    }
    else if ( !walk[v] && !placed[v] )
    {
      heads.push_back( { v, Choice::any, v } );
      placed[v] = 1;
    }
    walk[v] = walk[v] ? walk[v] : id;
  }
  std::vector<std::size_t> frontier;
  for ( auto const& a : heads )
    frontier.push_back( a.vertex );
  for ( std::size_t k = 0; k < frontier.size(); ++k )
    for ( auto u : in[frontier[k]] )
      if ( !placed[u] )
      {
        placed[u] = 1;
        trees.push_back( { u, Choice::preimage_of, frontier[k] } );
        frontier.push_back( u );
      }
  heads.insert( heads.end(), trees.begin(), trees.end() );
  return heads;
}

} // namespace

SubdynamicsResult embed_pattern( std::vector<std::uint64_t> const& image, FunctionalGraph const& pattern )
{
  auto const m = pattern.size();
  SubdynamicsResult result;
  if ( m > image.size() )
  {
    result.diagnostic = "pattern has more vertices than the configuration space";
    return result;
  }
  std::vector<std::vector<std::size_t>> in( m );
  for ( std::size_t v = 0; v < m; ++v )
    if ( pattern.out[v] != FunctionalGraph::none )
      in.at( pattern.out[v] ).push_back( v );

  std::vector<std::uint64_t> offset( image.size() + 1u, 0 ), pre( image.size() );
  for ( auto y : image )
    ++offset[y + 1u];
  std::partial_sum( offset.begin(), offset.end(), offset.begin() );
  {
    auto fill = offset;
    for ( std::uint64_t x = 0; x < image.size(); ++x )
      pre[fill[image[x]]++] = x;
  }

  auto const order = embedding_order( pattern, in );
  constexpr auto unset = FunctionalGraph::none;
  std::vector<std::uint64_t> pi( m, unset );
  std::vector<std::uint8_t> used( image.size(), 0 );

  auto consistent = [&]( std::size_t v, std::uint64_t x ) {
    if ( used[x] )
      return false;
    auto const w = pattern.out[v];
    if ( w != FunctionalGraph::none && ( w == v ? image[x] != x : ( pi[w] != unset && image[x] != pi[w] ) ) )
      return false;
    for ( auto u : in[v] )
      if ( u != v && pi[u] != unset && image[pi[u]] != x )
        return false;
    return true;
  };

  std::function<bool( std::size_t )> place = [&]( std::size_t k ) -> bool {
    if ( k == order.size() )
      return true;
    auto const& a = order[k];
    auto attempt = [&]( std::uint64_t x ) {
      if ( !consistent( a.vertex, x ) )
        return false;
      pi[a.vertex] = x;
      used[x] = 1;
      if ( place( k + 1u ) )
        return true;
      used[x] = 0;
      pi[a.vertex] = unset;
      return false;
    };
    switch ( a.choice )
    {
    case Choice::any:
      for ( std::uint64_t x = 0; x < image.size(); ++x )
        if ( attempt( x ) )
          return true;
      return false;
    case Choice::image_of:
      return attempt( image[pi[a.other]] );
    case Choice::preimage_of:
    {
      auto const y = pi[a.other];
      for ( auto p = offset[y]; p < offset[y + 1u]; ++p )
        if ( attempt( pre[p] ) )
          return true;
      return false;
    }
    }
    return false;
  };

  result.answer = place( 0 );
  if ( result.answer )
    result.embedding = pi;
  else
    result.diagnostic = "no injective arc-preserving embedding exists";
  return result;
}

SubdynamicsResult subdynamics( Network const& net, BlockParallelSchedule const& mu, FunctionalGraph const& pattern,
                               ExhaustiveOptions const& options )
{
  return embed_pattern( image_table( net, mu, options ), pattern );
}

SubdynamicsResult subdynamics( Network const& net, BlockParallelSchedule const& mu, PatternGraph const& pattern,
                               ExhaustiveOptions const& options )
{
  if ( auto v = pattern.branching_vertex() )
  {
    SubdynamicsResult r;
    r.diagnostic = "vertex " + pattern.names[*v] + " has out-degree above one; a functional graph contains no such pattern";
    return r;
  }
  return subdynamics( net, mu, pattern.to_functional(), options );
}

namespace
{

/* all partitioned orders of [n]: set partitions, then every order inside each part */
std::vector<std::vector<std::vector<std::size_t>>> all_partitioned_orders( std::size_t n )
{
  std::vector<std::vector<std::vector<std::size_t>>> result;
  std::vector<std::size_t> label( n, 0 );
  std::function<void( std::size_t, std::size_t )> partitions = [&]( std::size_t i, std::size_t parts ) {
    if ( i == n )
    {
      std::vector<std::vector<std::size_t>> blocks( parts );
      for ( std::size_t j = 0; j < n; ++j )
        blocks[label[j]].push_back( j );
      std::function<void( std::size_t )> orders = [&]( std::size_t b ) {
        if ( b == blocks.size() )
        {
          result.push_back( blocks );
          return;
        }
        std::sort( blocks[b].begin(), blocks[b].end() );
        do
          orders( b + 1u );
        while ( std::next_permutation( blocks[b].begin(), blocks[b].end() ) );
      };
      orders( 0 );
      return;
    }
    for ( std::size_t p = 0; p <= parts; ++p )
    {
      label[i] = p;
      partitions( i + 1u, std::max( parts, p + 1u ) );
    }
  };
  partitions( 0, 0 );
  return result;
}

/* rows[i] bit j set: f_i reads x_j; true iff the composed linear step is the identity */
bool composes_to_identity( std::vector<std::uint64_t> const& rows, std::vector<Block> const& blocks )
{
  auto const n = rows.size();
  std::vector<std::uint64_t> cur( n ), next;
  for ( std::size_t i = 0; i < n; ++i )
    cur[i] = std::uint64_t{ 1 } << i;
  for ( auto const& w : blocks )
  {
    next = cur;
    for ( auto i : w )
    {
      std::uint64_t r = 0;
      for ( std::size_t j = 0; j < n; ++j )
        if ( ( rows[i] >> j ) & 1u )
          r ^= cur[j];
      next[i] = r;
    }
    cur.swap( next );
  }
  for ( std::size_t i = 0; i < n; ++i )
    if ( cur[i] != ( std::uint64_t{ 1 } << i ) )
      return false;
  return true;
}

bool has_off_diagonal( std::vector<std::uint64_t> const& rows )
{
  for ( std::size_t i = 0; i < rows.size(); ++i )
    if ( rows[i] & ~( std::uint64_t{ 1 } << i ) )
      return true;
  return false;
}

Network xor_network( std::vector<std::uint64_t> const& rows )
{
  std::vector<Expr> locals;
  for ( auto row : rows )
  {
    std::vector<Expr> terms;
    for ( std::size_t j = 0; j < rows.size(); ++j )
      if ( ( row >> j ) & 1u )
        terms.push_back( Expr::var( j ) );
    if ( terms.empty() )
      locals.push_back( Expr::constant( false ) );
    else if ( terms.size() == 1u )
      locals.push_back( terms.front() );
    else
      locals.push_back( Expr::make( Op::xor_, std::move( terms ) ) );
  }
  return Network( std::move( locals ) );
}

} // namespace

XorIdentity search_xor_identity( std::size_t n )
{
  if ( n == 0u )
    throw Error( ErrorKind::input, "network size must be at least 1" );
  if ( n > 7u )
    throw Error( ErrorKind::capacity, "XOR identity search is limited to n <= 7" );

  auto const row_count = std::uint64_t{ 1 } << n;
  std::vector<std::uint64_t> identity_rows( n );
  for ( std::size_t i = 0; i < n; ++i )
    identity_rows[i] = std::uint64_t{ 1 } << i;

  /* small n: every matrix; otherwise identity with at most two rows replaced */
  std::vector<std::vector<std::uint64_t>> candidates;
  if ( n <= 3u )
  {
    std::vector<std::uint64_t> rows( n, 0 );
    std::function<void( std::size_t )> all = [&]( std::size_t i ) {
      if ( i == n )
      {
        if ( has_off_diagonal( rows ) )
          candidates.push_back( rows );
        return;
      }
      for ( std::uint64_t r = 0; r < row_count; ++r )
      {
        rows[i] = r;
        all( i + 1u );
      }
    };
    all( 0 );
  }
  else
  {
    for ( std::size_t a = 0; a < n; ++a )
      for ( std::uint64_t ra = 0; ra < row_count; ++ra )
      {
        auto rows = identity_rows;
        rows[a] = ra;
        if ( has_off_diagonal( rows ) )
          candidates.push_back( rows );
        for ( std::size_t b = a + 1u; b < n; ++b )
          for ( std::uint64_t rb = 0; rb < row_count; ++rb )
          {
            if ( rb == identity_rows[b] )
              continue;
            auto both = rows;
            both[b] = rb;
            if ( has_off_diagonal( both ) )
              candidates.push_back( std::move( both ) );
          }
      }
  }

  for ( auto& oblocks : all_partitioned_orders( n ) )
  {
    auto mu = BlockParallelSchedule::validate( oblocks, n );
    auto const blocks = phi( mu ).blocks;
    for ( auto const& rows : candidates )
      if ( composes_to_identity( rows, blocks ) )
        return { xor_network( rows ), std::move( mu ) };
  }
  throw Error( ErrorKind::search_exhausted, "no XOR network of size " + std::to_string( n ) + " has an identity step with a non-loop arc" );
}

} // namespace ban
