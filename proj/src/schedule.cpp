#include "ban/schedule.hpp"

#include "ban/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ban
{

BlockParallelSchedule BlockParallelSchedule::validate( std::vector<std::vector<std::size_t>> oblocks, std::size_t n )
{
  std::vector<std::pair<std::size_t, std::size_t>> where( n, { SIZE_MAX, SIZE_MAX } );
  for ( std::size_t k = 0; k < oblocks.size(); ++k )
  {
    if ( oblocks[k].empty() )
      throw Error( ErrorKind::empty_oblock, "o-block " + std::to_string( k ) + " is empty" );
    for ( std::size_t p = 0; p < oblocks[k].size(); ++p )
    {
      auto const a = oblocks[k][p];
      if ( a >= n )
        throw Error( ErrorKind::automaton_out_of_range, "automaton " + std::to_string( a ) + " >= n = " + std::to_string( n ) );
      if ( where[a].first != SIZE_MAX )
        throw Error( ErrorKind::duplicate_automaton, "automaton " + std::to_string( a ) + " appears more than once" );
      where[a] = { k, p };
    }
  }
  for ( std::size_t a = 0; a < n; ++a )
    if ( where[a].first == SIZE_MAX )
      throw Error( ErrorKind::missing_automaton, "automaton " + std::to_string( a ) + " belongs to no o-block" );

  BlockParallelSchedule mu;
  mu.n_ = n;
  mu.oblocks_ = std::move( oblocks );
  mu.where_ = std::move( where );
  return mu;
}

std::string BlockParallelSchedule::to_string() const
{
  std::ostringstream os;
  os << '{';
  for ( std::size_t k = 0; k < oblocks_.size(); ++k )
  {
    if ( k )
      os << ',';
    os << '(';
    for ( std::size_t p = 0; p < oblocks_[k].size(); ++p )
      os << ( p ? "," : "" ) << oblocks_[k][p];
    os << ')';
  }
  os << '}';
  return os.str();
}

BlockParallelSchedule mu_par( std::size_t n )
{
  std::vector<std::vector<std::size_t>> ob;
  ob.reserve( n );
  for ( std::size_t i = 0; i < n; ++i )
    ob.push_back( { i } );
  return BlockParallelSchedule::validate( std::move( ob ), n );
}

BigInt lcm_length( BlockParallelSchedule const& mu )
{
  BigInt l = 1;
  for ( auto const& ob : mu.oblocks() )
  {
    BigInt const len = ob.size();
    l = l / boost::multiprecision::gcd( l, len ) * len;
  }
  return l;
}

BlockCursor::BlockCursor( BlockParallelSchedule const& mu, BigInt const& start ) : mu_( &mu ), pos_( mu.oblocks().size() )
{
  for ( std::size_t k = 0; k < pos_.size(); ++k )
    pos_[k] = static_cast<std::size_t>( start % mu.oblocks()[k].size() );
  rebuild();
}

void BlockCursor::advance()
{
  for ( std::size_t k = 0; k < pos_.size(); ++k )
    if ( ++pos_[k] == mu_->oblocks()[k].size() )
      pos_[k] = 0;
  rebuild();
}

void BlockCursor::rebuild()
{
  block_.clear();
  for ( std::size_t k = 0; k < pos_.size(); ++k )
    block_.push_back( mu_->oblocks()[k][pos_[k]] );
  std::sort( block_.begin(), block_.end() );
}

BlockSequence phi( BlockParallelSchedule const& mu, std::uint64_t limit )
{
  auto const l = lcm_length( mu );
  if ( l > limit )
    throw Error( ErrorKind::capacity, "phi has " + l.str() + " blocks, above the materialization limit " + std::to_string( limit ) );
  auto const len = static_cast<std::uint64_t>( l );
  BlockSequence seq;
  seq.blocks.reserve( len );
  BlockCursor cur( mu );
  for ( std::uint64_t t = 0; t < len; ++t, cur.advance() )
    seq.blocks.push_back( cur.block() );
  return seq;
}

Block block_at( BlockParallelSchedule const& mu, BigInt const& t )
{
  if ( t < 0 || t >= lcm_length( mu ) )
    throw Error( ErrorKind::range, "substep index " + t.str() + " outside [0, l)" );
  return BlockCursor( mu, t ).block();
}

BigInt PrimeBackbone::product() const
{
  BigInt p = 1;
  for ( auto v : primes )
    p *= v;
  return p;
}

namespace
{

std::vector<std::uint64_t> sieve( std::uint64_t bound )
{
  std::vector<bool> composite( bound, false );
  std::vector<std::uint64_t> primes;
  for ( std::uint64_t i = 2; i < bound; ++i )
  {
    if ( composite[i] )
      continue;
    primes.push_back( i );
    for ( std::uint64_t j = i * i; j < bound; j += i )
      composite[j] = true;
  }
  return primes;
}

} // namespace

PrimeBackbone gen_primes( std::size_t n )
{
  if ( n < 2u )
    throw Error( ErrorKind::input, "prime backbone needs n >= 2" );
  auto const nn = static_cast<double>( n );
  auto const k = static_cast<std::size_t>( std::floor( nn * nn / ( 2.0 * std::log( nn ) ) ) );
  auto const all = sieve( static_cast<std::uint64_t>( n ) * n );
  if ( all.size() < k )
    throw Error( ErrorKind::capacity, "fewer than k_n primes below n^2" );

  PrimeBackbone bb;
  bb.n = n;
  bb.primes.assign( all.begin(), all.begin() + static_cast<std::ptrdiff_t>( k ) );
  bb.cumsums.assign( 1, 0u );
  for ( auto p : bb.primes )
    bb.cumsums.push_back( bb.cumsums.back() + p );

  auto const prod = bb.product();
  BigInt const lower = BigInt( 1 ) << n;
  BigInt const upper = BigInt( 1 ) << ( 2u * n * n );
  if ( !( lower < prod && prod < upper ) )
    throw Error( ErrorKind::capacity, "prime product violates 2^n < prod < 2^(2n^2) for n = " + std::to_string( n ) );
  return bb;
}

std::uint64_t nth_prime( std::size_t i )
{
  if ( i == 0u )
    throw Error( ErrorKind::input, "prime index is 1-based" );
  std::uint64_t bound = 16;
  for ( ;; bound *= 2 )
  {
    auto const ps = sieve( bound );
    if ( ps.size() >= i )
      return ps[i - 1u];
  }
}

std::vector<std::vector<std::size_t>> backbone_oblocks( PrimeBackbone const& primes )
{
  std::vector<std::vector<std::size_t>> ob;
  for ( std::size_t j = 0; j < primes.count(); ++j )
  {
    std::vector<std::size_t> block( primes.primes[j] );
    std::iota( block.begin(), block.end(), static_cast<std::size_t>( primes.cumsums[j] ) );
    ob.push_back( std::move( block ) );
  }
  return ob;
}

Backbone build_gn( std::size_t n )
{
  auto primes = gen_primes( n );
  auto const q = static_cast<std::size_t>( primes.total() );
  std::vector<Expr> locals( q, Expr::constant( false ) );
  auto mu = BlockParallelSchedule::validate( backbone_oblocks( primes ), q );
  return { Network( std::move( locals ) ), std::move( mu ), std::move( primes ) };
}

std::size_t ceil_log2( BigInt const& value )
{
  if ( value <= 1 )
    return 0;
  BigInt const v = value - 1;
  return static_cast<std::size_t>( boost::multiprecision::msb( v ) ) + 1u;
}

} // namespace ban
