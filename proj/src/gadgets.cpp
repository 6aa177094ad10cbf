#include "ban/gadgets.hpp"

#include "ban/circuits.hpp"
#include "ban/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace ban
{

using circuits::Bits;

void IterCvpInstance::validate() const
{
  auto const n = start.size();
  if ( n == 0u )
    throw Error( ErrorKind::input, "Iter-CVP instance needs at least one bit" );
  if ( circuit.size() != n )
    throw Error( ErrorKind::width, "circuit has " + std::to_string( circuit.size() ) + " outputs for " + std::to_string( n ) + " inputs" );
  for ( std::size_t j = 0; j < n; ++j )
    if ( circuit[j].input_width() > n )
      throw Error( ErrorKind::width, "circuit output " + std::to_string( j ) + " reads beyond x" + std::to_string( n - 1u ) );
  if ( output >= n )
    throw Error( ErrorKind::range, "output index " + std::to_string( output ) + " outside the circuit" );
}

bool iter_cvp_oracle( IterCvpInstance const& inst )
{
  inst.validate();
  auto const n = inst.size();
  if ( n > 24u )
    throw Error( ErrorKind::capacity, "Iter-CVP oracle is limited to 24 bits" );
  Network const c( inst.circuit );
  std::vector<std::uint8_t> seen( std::size_t{ 1 } << n, 0 );
  auto x = inst.start;
  for ( ;; )
  {
    if ( x[inst.output] )
      return true;
    auto const r = x.rank();
    if ( seen[r] )
      return false;
    seen[r] = 1;
    x = c.parallel_image( x );
  }
}

Range const& GadgetInstance::range( std::string const& name ) const
{
  for ( auto const& r : layout )
    if ( r.name == name )
      return r;
  throw Error( ErrorKind::input, "gadget has no range " + name );
}

bool GadgetInstance::has_range( std::string const& name ) const
{
  return std::any_of( layout.begin(), layout.end(), [&]( auto const& r ) { return r.name == name; } );
}

Configuration const& GadgetInstance::configuration( std::string const& name ) const
{
  for ( auto const& [key, x] : configurations )
    if ( key == name )
      return x;
  throw Error( ErrorKind::input, "gadget has no configuration " + name );
}

bool GadgetInstance::has_configuration( std::string const& name ) const
{
  return std::any_of( configurations.begin(), configurations.end(), [&]( auto const& c ) { return c.first == name; } );
}

std::optional<std::string> GadgetInstance::param( std::string const& key ) const
{
  for ( auto const& [k, v] : params )
    if ( k == key )
      return v;
  return std::nullopt;
}

namespace
{

/* Shared skeleton: backbone P, then appended automata, each in a singleton o-block. */
class Assembly
{
public:
  explicit Assembly( std::size_t backbone_n, bool identity_backbone = false ) : primes_( gen_primes( backbone_n ) )
  {
    q_ = static_cast<std::size_t>( primes_.total() );
    l_ = primes_.product();
    for ( std::size_t j = 0; j < q_; ++j )
      locals_.push_back( identity_backbone ? Expr::var( j ) : Expr::constant( false ) );
    layout_.push_back( { "P", 0, q_ } );
    next_ = q_;
  }

  std::size_t q() const noexcept { return q_; }
  BigInt const& l() const noexcept { return l_; }
  PrimeBackbone const& primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return next_; }

  /* reserves `count` automata; locals are set later */
  Range reserve( std::string const& name, std::size_t count )
  {
    Range r{ name, next_, count };
    next_ += count;
    locals_.resize( next_ );
    if ( count > 0u )
      layout_.push_back( r );
    return r;
  }

  void set( std::size_t i, Expr e ) { locals_.at( i ) = std::move( e ); }
  void set( Range const& r, Bits const& bits )
  {
    for ( std::size_t k = 0; k < r.count; ++k )
      set( r.first + k, bits.at( k ) );
  }

  GadgetInstance finish()
  {
    auto oblocks = backbone_oblocks( primes_ );
    for ( std::size_t j = q_; j < next_; ++j )
      oblocks.push_back( { j } );
    GadgetInstance g;
    g.net = Network( std::move( locals_ ) );
    g.schedule = BlockParallelSchedule::validate( std::move( oblocks ), next_ );
    g.layout = layout_;
    g.params.emplace_back( "backbone", std::to_string( primes_.n ) );
    g.params.emplace_back( "l", l_.str() );
    return g;
  }

private:
  PrimeBackbone primes_;
  std::size_t q_ = 0;
  BigInt l_;
  std::vector<Expr> locals_;
  std::vector<Range> layout_;
  std::size_t next_ = 0;
};

/* P | B | D | R frame shared by the Iter-CVP reductions */
struct CvpFrame
{
  Assembly as;
  IterCvpInstance const& inst;
  std::size_t n;
  Range B, D, R;
  Bits b, d;
  Expr r;
  std::vector<Expr> c_of_d;
  std::vector<Expr> c_of_start;
  Expr lt_last, eq_last, eq_zero;

  CvpFrame( IterCvpInstance const& instance, BigInt const& counter_period )
      : as( std::max<std::size_t>( 2u, instance.size() ) ), inst( instance ), n( instance.size() )
  {
    inst.validate();
    auto const modulus = counter_period == 0 ? as.l() : counter_period;
    B = as.reserve( "B", ceil_log2( modulus ) );
    D = as.reserve( "D", n );
    R = as.reserve( "R", 1 );
    b = circuits::variables( B.first, B.count );
    d = circuits::variables( D.first, D.count );
    r = Expr::var( R.first );
    for ( std::size_t j = 0; j < n; ++j )
    {
      c_of_d.push_back( substitute( inst.circuit[j], [&]( std::size_t v ) { return Expr::var( D.first + v ); } ) );
      c_of_start.push_back( simplify( substitute( inst.circuit[j], [&]( std::size_t v ) { return Expr::constant( inst.start[v] ); } ) ) );
    }
    lt_last = circuits::less_than( b, as.l() - 1 );
    eq_last = circuits::equals( b, as.l() - 1 );
    eq_zero = circuits::equals( b, 0 );
  }

  Expr start_bit( std::size_t j ) const { return Expr::constant( inst.start[j] ); }
  Expr record() const { return r | d[inst.output]; }

  /* +1 below l-1, l-1 -> 0, frozen at and above l */
  Bits counter_mod_l() const
  {
    return circuits::select( lt_last, circuits::increment( b ), circuits::select( eq_last, circuits::constant( b.size(), 0 ), b ) );
  }

  Configuration config( BigInt const& counter, Configuration const& dbits, bool rbit ) const
  {
    Configuration x( as.size() );
    for ( std::size_t k = 0; k < B.count; ++k )
      x.set( B.first + k, boost::multiprecision::bit_test( counter, static_cast<unsigned>( B.count - 1u - k ) ) );
    for ( std::size_t j = 0; j < n; ++j )
      x.set( D.first + j, dbits[j] );
    x.set( R.first, rbit );
    return x;
  }
};

void add_cvp_params( GadgetInstance& g, CvpFrame const& f )
{
  g.params.emplace_back( "q", std::to_string( f.as.q() ) );
  g.params.emplace_back( "l'", std::to_string( f.B.count ) );
  g.params.emplace_back( "output", std::to_string( f.inst.output ) );
}

} // namespace

GadgetInstance build_counter_network( std::size_t n )
{
  if ( n < 2u )
    throw Error( ErrorKind::input, "counter network needs n >= 2" );
  Assembly as( n );
  auto const B = as.reserve( "B", n );
  auto const bits = circuits::variables( B.first, n );
  auto const saturated = circuits::equals( bits, ( BigInt( 1 ) << n ) - 1 );
  auto const inc = circuits::increment( bits );
  Bits next;
  for ( auto const& e : inc )
    next.push_back( simplify( e | saturated ) );
  as.set( B, next );
  auto const q = as.q();
  auto g = as.finish();
  Configuration y( g.net.size() );
  for ( std::size_t k = 0; k < n; ++k )
    y.set( q + k, true );
  g.configurations.emplace_back( "y", y );
  return g;
}

GadgetInstance reduce_step_bit( IterCvpInstance const& inst )
{
  CvpFrame f( inst, 0 );
  f.as.set( f.B, f.counter_mod_l() );
  for ( std::size_t j = 0; j < f.n; ++j )
    f.as.set( f.D.first + j, simplify( ite( f.lt_last, f.c_of_d[j], f.start_bit( j ) ) ) );
  f.as.set( f.R.first, f.record() );
  auto g = f.as.finish();
  add_cvp_params( g, f );
  auto const x = f.config( 0, inst.start, false );
  g.configurations.emplace_back( "x", x );
  g.configurations.emplace_back( "y+", f.config( 0, inst.start, true ) );
  g.configurations.emplace_back( "y-", x );
  return g;
}

GadgetInstance reduce_preimage( IterCvpInstance const& inst )
{
  CvpFrame f( inst, 0 );
  f.as.set( f.B, f.counter_mod_l() );
  for ( std::size_t j = 0; j < f.n; ++j )
    f.as.set( f.D.first + j, simplify( ite( f.eq_zero, f.c_of_start[j], f.lt_last & f.c_of_d[j] ) ) );
  f.as.set( f.R.first, simplify( ite( f.eq_zero, f.start_bit( inst.output ), f.record() ) ) );
  auto g = f.as.finish();
  add_cvp_params( g, f );
  Configuration const zeros( inst.size() );
  g.configurations.emplace_back( "y", f.config( 0, zeros, true ) );
  g.configurations.emplace_back( "witness", f.config( 0, zeros, false ) );
  g.params.emplace_back( "target-exponent-printed", "l" );
  g.params.emplace_back( "target-exponent-used", "l'" );
  return g;
}

GadgetInstance reduce_fixed_point( IterCvpInstance const& inst )
{
  CvpFrame f( inst, 0 );
  auto const wrap = circuits::at_least( f.b, f.as.l() - 1 );
  f.as.set( f.B, circuits::select( wrap, circuits::constant( f.b.size(), 0 ), circuits::increment( f.b ) ) );
  for ( std::size_t j = 0; j < f.n; ++j )
    f.as.set( f.D.first + j, simplify( ite( f.lt_last, f.c_of_d[j], f.start_bit( j ) ) ) );
  f.as.set( f.R.first, simplify( ite( f.lt_last, f.record(), !f.r ) ) );
  auto g = f.as.finish();
  add_cvp_params( g, f );
  g.configurations.emplace_back( "x", f.config( 0, inst.start, false ) );
  return g;
}

GadgetInstance reduce_limit_cycle( IterCvpInstance const& inst, std::uint64_t k )
{
  if ( k == 0u )
    throw Error( ErrorKind::input, "cycle length must be at least 1" );
  inst.validate();
  auto const l = gen_primes( std::max<std::size_t>( 2u, inst.size() ) ).product();
  BigInt const period = l * k;
  CvpFrame f( inst, period );
  auto const wrap = circuits::at_least( f.b, period - 1 );
  f.as.set( f.B, circuits::select( wrap, circuits::constant( f.b.size(), 0 ), circuits::increment( f.b ) ) );
  for ( std::size_t j = 0; j < f.n; ++j )
    f.as.set( f.D.first + j, simplify( ite( f.lt_last, f.c_of_d[j], f.start_bit( j ) ) ) );
  f.as.set( f.R.first, simplify( ite( f.lt_last, f.record(), ite( f.eq_last, !f.r, f.r ) ) ) );
  auto g = f.as.finish();
  add_cvp_params( g, f );
  g.params.emplace_back( "k", std::to_string( k ) );
  for ( std::uint64_t i = 0; i < k; ++i )
    g.configurations.emplace_back( "c" + std::to_string( i ), f.config( l * i, inst.start, false ) );
  return g;
}

GadgetInstance reduce_constant( IterCvpInstance const& inst )
{
  CvpFrame f( inst, 0 );
  auto const ones = circuits::constant( f.b.size(), ( BigInt( 1 ) << f.b.size() ) - 1 );
  f.as.set( f.B, circuits::select( f.lt_last, circuits::increment( f.b ), ones ) );
  for ( std::size_t j = 0; j < f.n; ++j )
    f.as.set( f.D.first + j, simplify( ite( f.eq_zero, f.c_of_start[j], f.lt_last & f.c_of_d[j] ) ) );
  auto const below_l = circuits::less_than( f.b, f.as.l() );
  f.as.set( f.R.first, simplify( ite( f.eq_zero, f.start_bit( inst.output ), ite( below_l, f.record(), Expr::constant( true ) ) ) ) );
  auto g = f.as.finish();
  add_cvp_params( g, f );
  Configuration const zeros( inst.size() );
  g.configurations.emplace_back( "x", f.config( 0, zeros, false ) );
  g.configurations.emplace_back( "y", f.config( ( BigInt( 1 ) << f.b.size() ) - 1, zeros, true ) );
  return g;
}

std::uint64_t model_count( Expr const& psi, std::size_t width )
{
  if ( psi.input_width() > width )
    throw Error( ErrorKind::width, "formula reads beyond its declared width" );
  if ( width > 30u )
    throw Error( ErrorKind::capacity, "model counting is limited to 30 variables" );
  std::uint64_t count = 0;
  for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << width ); ++v )
    count += eval( psi, Configuration::from_rank( width, v ) );
  return count;
}

GadgetInstance reduce_modp_identity( Expr const& psi, std::size_t width, std::uint64_t m, std::size_t i )
{
  if ( psi.input_width() > width )
    throw Error( ErrorKind::width, "formula reads beyond its declared width" );
  auto const p = nth_prime( i );
  Assembly as( std::max<std::size_t>( 2u, width ), true );
  auto const B = as.reserve( "B", ceil_log2( as.l() ) );
  auto const R = as.reserve( "R", ceil_log2( p ) );
  auto const b = circuits::variables( B.first, B.count );
  auto const r = circuits::variables( R.first, R.count );

  auto const lt_last = circuits::less_than( b, as.l() - 1 );
  auto const eq_last = circuits::equals( b, as.l() - 1 );
  as.set( B, circuits::select( lt_last, circuits::increment( b ), circuits::select( eq_last, circuits::constant( b.size(), 0 ), b ) ) );

  auto const sat = substitute( psi, [&]( std::size_t v ) { return Expr::var( B.first + B.count - width + v ); } );
  auto const zero = circuits::equals( b, 0 );
  auto const in_range = circuits::less_than( b, BigInt( 1 ) << width );
  auto add = [&]( std::int64_t c ) {
    std::vector<std::uint64_t> table( p );
    auto const pm = static_cast<std::int64_t>( p );
    for ( std::uint64_t v = 0; v < p; ++v )
      table[v] = static_cast<std::uint64_t>( ( ( static_cast<std::int64_t>( v ) + c ) % pm + pm ) % pm );
    return circuits::lookup( r, table, r.size(), r );
  };
  auto const mm = static_cast<std::int64_t>( m % p );
  auto const next = circuits::select( simplify( zero & sat ), add( 1 - mm ),
                                      circuits::select( zero, add( -mm ), circuits::select( simplify( in_range & sat ), add( 1 ), r ) ) );
  as.set( R, next );

  auto g = as.finish();
  g.params.emplace_back( "p", std::to_string( p ) );
  g.params.emplace_back( "m", std::to_string( m ) );
  g.params.emplace_back( "i", std::to_string( i ) );
  g.params.emplace_back( "width", std::to_string( width ) );
  return g;
}

GadgetInstance reduce_subdynamics( FunctionalGraph const& pattern, IterCvpInstance const& inst )
{
  auto const m_vertices = pattern.size();
  if ( m_vertices == 0u || !pattern.is_total() )
    throw Error( ErrorKind::not_functional, "pattern must have out-degree exactly one everywhere" );
  for ( auto w : pattern.out )
    if ( w >= m_vertices )
      throw Error( ErrorKind::not_functional, "pattern arc leaves the vertex set" );

  /* cycles of the pattern, each listed from its smallest-id vertex */
  std::vector<std::vector<std::size_t>> cycles;
  {
    std::vector<std::uint32_t> walk( m_vertices, 0 );
    std::uint32_t id = 0;
    for ( std::size_t s = 0; s < m_vertices; ++s )
    {
      if ( walk[s] )
        continue;
      ++id;
      auto v = s;
      while ( !walk[v] )
      {
        walk[v] = id;
        v = pattern.out[v];
      }
      if ( walk[v] != id )
        continue;
      std::vector<std::size_t> cyc{ v };
      for ( auto u = pattern.out[v]; u != v; u = pattern.out[u] )
        cyc.push_back( u );
      std::rotate( cyc.begin(), std::min_element( cyc.begin(), cyc.end() ), cyc.end() );
      cycles.push_back( std::move( cyc ) );
    }
  }
  std::size_t k = 0;
  for ( auto const& c : cycles )
    k = std::max( k, c.size() );
  std::vector<std::vector<std::size_t>> chosen;
  for ( auto const& c : cycles )
    if ( c.size() == k )
      chosen.push_back( c );
  auto const copies = chosen.size();
  bool const only_loops = k == 1u && copies == m_vertices;

  auto inner = k == 1u ? reduce_fixed_point( inst ) : reduce_limit_cycle( inst, k );
  auto const n_in = inner.net.size();
  auto const P = inner.range( "P" );
  auto const Bin = inner.range( "B" );

  /* pattern vertices outside the chosen cycles, coded by their rank here */
  std::vector<std::size_t> rest;
  std::vector<std::size_t> code( m_vertices, 0 );
  std::vector<std::pair<std::size_t, std::size_t>> cycle_slot( m_vertices, { 0, 0 } );
  std::vector<std::uint8_t> on_chosen( m_vertices, 0 );
  for ( std::size_t j = 0; j < copies; ++j )
    for ( std::size_t s = 0; s < k; ++s )
    {
      on_chosen[chosen[j][s]] = 1;
      cycle_slot[chosen[j][s]] = { j, s };
    }
  for ( std::size_t v = 0; v < m_vertices; ++v )
    if ( !on_chosen[v] )
    {
      code[v] = rest.size();
      rest.push_back( v );
    }

  auto const kbits = ceil_log2( copies );
  auto const zbase = n_in - P.count - Bin.count + kbits;
  auto const zneed = only_loops ? 0u : ceil_log2( rest.size() );
  auto const xbits = zneed > zbase ? zneed - zbase : 0u;
  auto const fbits = only_loops ? 0u : 1u;
  auto const total = n_in + kbits + xbits + fbits;
  auto const Z = Range{ "Z", Bin.first + Bin.count, n_in - Bin.first - Bin.count + kbits + xbits };
  auto const Fi = total - 1u;

  auto cycle_config = [&]( std::size_t j, std::size_t s ) {
    auto const& c = inner.configuration( k == 1u ? "x" : "c" + std::to_string( s ) );
    Configuration x( total );
    for ( std::size_t a = 0; a < n_in; ++a )
      x.set( a, c[a] );
    for ( std::size_t t = 0; t < kbits; ++t )
      x.set( n_in + t, ( j >> ( kbits - 1u - t ) ) & 1u );
    return x;
  };
  auto rest_config = [&]( std::size_t c ) {
    Configuration x( total );
    for ( std::size_t t = 0; t < Z.count; ++t )
      x.set( Z.first + t, ( c >> ( Z.count - 1u - t ) ) & 1u );
    x.set( Fi, true );
    return x;
  };
  auto alpha = [&]( std::size_t v ) { return on_chosen[v] ? cycle_config( cycle_slot[v].first, cycle_slot[v].second ) : rest_config( code[v] ); };

  std::vector<Expr> locals( inner.net.locals().begin(), inner.net.locals().end() );
  for ( std::size_t t = 0; t < kbits + xbits; ++t )
    locals.push_back( Expr::var( n_in + t ) );

  if ( !only_loops )
  {
    auto const F = Expr::var( Fi );
    auto const b = circuits::variables( Bin.first, Bin.count );
    auto const z = circuits::variables( Z.first, Z.count );
    auto const l = BigInt( *inner.param( "l" ) );
    std::vector<Expr> p_zero, is_code;
    for ( std::size_t a = P.first; a < P.first + P.count; ++a )
      p_zero.push_back( !Expr::var( a ) );
    std::vector<Expr> code_eq( rest.size() );
    for ( std::size_t c = 0; c < rest.size(); ++c )
      code_eq[c] = circuits::equals( z, c );
    auto const valid = circuits::all_of( { circuits::all_of( p_zero ), circuits::any_of( code_eq ) } );
    auto const counting = simplify( valid & circuits::less_than( b, l - 1 ) );
    auto const writing = simplify( valid & circuits::equals( b, l - 1 ) );
    auto const inc = circuits::increment( b );

    auto written = [&]( std::size_t a ) {
      std::vector<Expr> ones;
      for ( std::size_t c = 0; c < rest.size(); ++c )
        if ( alpha( pattern.out[rest[c]] )[a] )
          ones.push_back( code_eq[c] );
      return circuits::any_of( ones );
    };

    locals.push_back( Expr::constant( false ) );
    for ( std::size_t a = 0; a < total; ++a )
    {
      Expr h;
      if ( P.contains( a ) )
        h = Expr::var( a );
      else if ( a == Fi )
        h = simplify( ite( writing, written( a ), Expr::constant( true ) ) );
      else if ( Bin.contains( a ) )
        h = simplify( ite( counting, inc[a - Bin.first], ite( writing, written( a ), Expr::var( a ) ) ) );
      else
        h = simplify( ite( writing, written( a ), Expr::var( a ) ) );
      auto const outside = a == Fi ? Expr::constant( false ) : locals[a];
      locals[a] = simplify( ite( F, h, outside ) );
    }
  }

  auto oblocks = inner.schedule.oblocks();
  for ( auto a = n_in; a < total; ++a )
    oblocks.push_back( { a } );

  GadgetInstance g;
  g.net = Network( std::move( locals ) );
  g.schedule = BlockParallelSchedule::validate( std::move( oblocks ), total );
  for ( auto const& r : inner.layout )
    g.layout.push_back( r );
  if ( kbits )
    g.layout.push_back( { "K", n_in, kbits } );
  if ( xbits )
    g.layout.push_back( { "X", n_in + kbits, xbits } );
  if ( fbits )
    g.layout.push_back( { "F", Fi, 1 } );
  g.params = inner.params;
  g.params.emplace_back( "k", std::to_string( k ) );
  g.params.emplace_back( "copies", std::to_string( copies ) );
  for ( std::size_t v = 0; v < m_vertices; ++v )
    g.configurations.emplace_back( "pi:" + pattern.label( v ), alpha( v ) );
  return g;
}

std::size_t TuringMachine::state_index( std::string const& name ) const
{
  auto it = std::find( states.begin(), states.end(), name );
  if ( it == states.end() )
    throw Error( ErrorKind::input, "unknown state " + name );
  return static_cast<std::size_t>( it - states.begin() );
}

std::size_t TuringMachine::symbol_index( std::string const& name ) const
{
  auto it = std::find( alphabet.begin(), alphabet.end(), name );
  if ( it == alphabet.end() )
    throw Error( ErrorKind::input, "unknown symbol " + name );
  return static_cast<std::size_t>( it - alphabet.begin() );
}

std::vector<std::size_t> TuringMachine::encode_word( std::vector<std::string> const& word ) const
{
  std::vector<std::size_t> w;
  for ( auto const& s : word )
    w.push_back( symbol_index( s ) );
  return w;
}

namespace
{

std::size_t clamp_move( std::size_t head, TuringMachine::Move move, std::size_t length )
{
  if ( move == TuringMachine::Move::left )
    return head == 0u ? 0u : head - 1u;
  if ( move == TuringMachine::Move::right )
    return head + 1u < length ? head + 1u : head;
  return head;
}

void check_machine( TuringMachine const& tm, std::vector<std::size_t> const& word )
{
  if ( word.empty() )
    throw Error( ErrorKind::input, "input word must be nonempty" );
  if ( tm.states.empty() || tm.alphabet.empty() )
    throw Error( ErrorKind::input, "machine needs states and symbols" );
  if ( tm.initial >= tm.states.size() || tm.accept >= tm.states.size() )
    throw Error( ErrorKind::input, "initial or accepting state undeclared" );
  for ( auto s : word )
    if ( s >= tm.alphabet.size() )
      throw Error( ErrorKind::input, "word symbol outside the alphabet" );
  for ( auto const& [key, act] : tm.delta )
    if ( key.first >= tm.states.size() || key.second >= tm.alphabet.size() || act.state >= tm.states.size() ||
         act.symbol >= tm.alphabet.size() )
      throw Error( ErrorKind::input, "transition refers to an undeclared state or symbol" );
}

} // namespace

bool tm_accepts( TuringMachine const& tm, std::vector<std::size_t> const& word )
{
  check_machine( tm, word );
  struct Key
  {
    std::size_t state, head;
    std::vector<std::size_t> tape;
    bool operator==( Key const& ) const = default;
  };
  struct KeyHash
  {
    std::size_t operator()( Key const& k ) const noexcept
    {
      std::size_t h = k.state * 1000003u ^ k.head;
      for ( auto s : k.tape )
        h = h * 31u + s;
      return h;
    }
  };
  std::unordered_set<Key, KeyHash> seen;
  Key cur{ tm.initial, 0, word };
  for ( ;; )
  {
    if ( cur.state == tm.accept )
      return true;
    auto it = tm.delta.find( { cur.state, cur.tape[cur.head] } );
    if ( it == tm.delta.end() || !seen.insert( cur ).second )
      return false;
    cur.tape[cur.head] = it->second.symbol;
    cur.state = it->second.state;
    cur.head = clamp_move( cur.head, it->second.move, word.size() );
  }
}

IterCvpInstance tm_to_circuit( TuringMachine const& tm, std::vector<std::size_t> const& word )
{
  check_machine( tm, word );
  auto const L = word.size();
  auto const c = std::max<std::size_t>( 1u, ceil_log2( tm.alphabet.size() ) );
  auto const sb = std::max<std::size_t>( 1u, ceil_log2( tm.states.size() ) );
  auto const hb = ceil_log2( L );
  auto const input0 = std::size_t{ 0 };
  auto const work0 = L * c;
  auto const state0 = 2u * L * c;
  auto const head0 = state0 + sb;
  auto const acc = head0 + hb;
  auto const n = acc + 1u;

  auto const state = circuits::variables( state0, sb );
  auto const head = circuits::variables( head0, hb );
  std::vector<Bits> cell( L );
  for ( std::size_t p = 0; p < L; ++p )
    cell[p] = circuits::variables( work0 + p * c, c );

  struct Case
  {
    Expr guard;
    std::size_t pos;
    TuringMachine::Action act;
  };
  std::vector<Case> cases;
  for ( auto const& [key, act] : tm.delta )
  {
    if ( key.first == tm.accept )
      continue;
    auto const in_state = circuits::equals( state, key.first );
    for ( std::size_t p = 0; p < L; ++p )
      cases.push_back( { circuits::all_of( { in_state, circuits::equals( head, p ), circuits::equals( cell[p], key.second ) } ), p, act } );
  }
  std::vector<Expr> all_guards;
  for ( auto const& cs : cases )
    all_guards.push_back( cs.guard );
  auto const moving = circuits::any_of( all_guards );

  std::vector<Expr> circuit( n );
  for ( std::size_t j = 0; j < L * c; ++j )
    circuit[input0 + j] = Expr::var( input0 + j );
  for ( std::size_t p = 0; p < L; ++p )
  {
    std::vector<Expr> here;
    for ( auto const& cs : cases )
      if ( cs.pos == p )
        here.push_back( cs.guard );
    auto const writes = circuits::any_of( here );
    for ( std::size_t k = 0; k < c; ++k )
    {
      std::vector<Expr> ones;
      for ( auto const& cs : cases )
        if ( cs.pos == p && ( ( cs.act.symbol >> ( c - 1u - k ) ) & 1u ) )
          ones.push_back( cs.guard );
      circuit[work0 + p * c + k] = simplify( ite( writes, circuits::any_of( ones ), cell[p][k] ) );
    }
  }
  for ( std::size_t k = 0; k < sb; ++k )
  {
    std::vector<Expr> ones;
    for ( auto const& cs : cases )
      if ( ( cs.act.state >> ( sb - 1u - k ) ) & 1u )
        ones.push_back( cs.guard );
    circuit[state0 + k] = simplify( ite( moving, circuits::any_of( ones ), state[k] ) );
  }
  for ( std::size_t k = 0; k < hb; ++k )
  {
    std::vector<Expr> ones;
    for ( auto const& cs : cases )
      if ( ( clamp_move( cs.pos, cs.act.move, L ) >> ( hb - 1u - k ) ) & 1u )
        ones.push_back( cs.guard );
    circuit[head0 + k] = simplify( ite( moving, circuits::any_of( ones ), head[k] ) );
  }
  circuit[acc] = simplify( Expr::var( acc ) | circuits::equals( state, tm.accept ) );

  Configuration start( n );
  for ( std::size_t p = 0; p < L; ++p )
    for ( std::size_t k = 0; k < c; ++k )
    {
      bool const bit = ( word[p] >> ( c - 1u - k ) ) & 1u;
      start.set( input0 + p * c + k, bit );
      start.set( work0 + p * c + k, bit );
    }
  for ( std::size_t k = 0; k < sb; ++k )
    start.set( state0 + k, ( tm.initial >> ( sb - 1u - k ) ) & 1u );
  return { std::move( circuit ), std::move( start ), acc };
}

Network reaction_to_ban( ReactionSystem const& rs )
{
  auto const n = rs.size();
  std::vector<std::vector<Expr>> terms( n );
  for ( auto const& re : rs.reactions )
  {
    std::vector<Expr> lits;
    for ( auto j : re.reactants )
      lits.push_back( Expr::var( j ) );
    for ( auto j : re.inhibitors )
      lits.push_back( !Expr::var( j ) );
    auto const enabled = lits.empty() ? Expr::constant( true ) : lits.size() == 1u ? lits.front() : Expr::make( Op::and_, lits );
    for ( auto p : re.products )
    {
      if ( p >= n )
        throw Error( ErrorKind::range, "product entity " + std::to_string( p ) + " undeclared" );
      terms[p].push_back( enabled );
    }
  }
  std::vector<Expr> locals;
  for ( auto& t : terms )
    locals.push_back( t.empty() ? Expr::constant( false ) : t.size() == 1u ? t.front() : Expr::make( Op::or_, std::move( t ) ) );
  return Network( std::move( locals ) );
}

std::vector<bool> reaction_step( ReactionSystem const& rs, std::vector<bool> const& state )
{
  std::vector<bool> next( rs.size(), false );
  for ( auto const& re : rs.reactions )
  {
    bool const on = std::all_of( re.reactants.begin(), re.reactants.end(), [&]( auto j ) { return state.at( j ); } ) &&
                    std::none_of( re.inhibitors.begin(), re.inhibitors.end(), [&]( auto j ) { return state.at( j ); } );
    if ( on )
      for ( auto p : re.products )
        next.at( p ) = true;
  }
  return next;
}

} // namespace ban
