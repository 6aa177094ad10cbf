#include "ban/cli.hpp"

#include "ban/analysis.hpp"
#include "ban/error.hpp"
#include "ban/gadgets.hpp"
#include "ban/io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <memory>

namespace ban
{

namespace
{

struct Common
{
  std::size_t limit = 22;
  std::uint64_t budget = default_substep_budget;
  bool serial = false;

  ExhaustiveOptions options() const { return { limit, serial ? ExecPolicy::serial : ExecPolicy::parallel, budget }; }
};

void add_common( CLI::App* cmd, Common& common )
{
  cmd->add_option( "--limit", common.limit, "largest n enumerated exhaustively" )->capture_default_str();
  cmd->add_option( "--budget", common.budget, "substeps allowed per step" )->capture_default_str();
  cmd->add_flag( "--serial", common.serial, "use the serial reference instead of the bit-sliced kernels" );
}

std::string block_string( Block const& block )
{
  std::string s = "{";
  for ( std::size_t k = 0; k < block.size(); ++k )
  {
    if ( k )
      s += ',';
    s += std::to_string( block[k] );
  }
  return s + '}';
}

/* a binary string of width n, or the name of a configuration stored in the document */
Configuration resolve( io::NetworkDocument const& doc, std::string const& text )
{
  if ( auto const* named = doc.configuration( text ) )
    return *named;
  if ( text.size() == doc.net.size() && text.find_first_not_of( "01" ) == std::string::npos )
    return Configuration::from_string( text );
  throw Error( ErrorKind::input, "'" + text + "' is neither a " + std::to_string( doc.net.size() ) + "-bit configuration nor a named one" );
}

io::NetworkDocument load_network( std::string const& path )
{
  return io::parse_network( io::read_file( path ) );
}

int decision( std::ostream& out, bool answer )
{
  out << ( answer ? "yes" : "no" ) << '\n';
  return answer ? 0 : 1;
}

int decision( std::ostream& out, Decision const& d, bool witness, char const* label )
{
  out << ( d.answer ? "yes" : "no" ) << '\n';
  if ( witness && d.witness )
    out << label << ": " << d.witness->to_string() << '\n';
  return d.answer ? 0 : 1;
}

} // namespace

int cli_main( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Boolean automata networks under block-parallel update schedules", "ban" };
  app.require_subcommand( 1 );
  app.set_help_all_flag( "--help-all", "expand all help" );

  int status = 0;
  Common common;
  std::string net_path;
  bool witness = false;

  auto const network_arg = [&]( CLI::App* cmd ) { cmd->add_option( "network", net_path, ".ban file" )->required(); };

  /* phi */
  auto* phi_cmd = app.add_subcommand( "phi", "print the substep blocks W_0 .. W_{l-1}" );
  network_arg( phi_cmd );
  std::uint64_t phi_limit = default_materialization_limit;
  phi_cmd->add_option( "--max", phi_limit, "refuse when l exceeds this" )->capture_default_str();
  phi_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    for ( auto const& w : phi( doc.schedule_or_parallel(), phi_limit ).blocks )
      out << block_string( w ) << '\n';
  } );

  /* step */
  auto* step_cmd = app.add_subcommand( "step", "apply one step of f^mu" );
  network_arg( step_cmd );
  std::string from;
  bool trace = false;
  std::string substep;
  step_cmd->add_option( "configuration", from, "binary string or named configuration" )->required();
  step_cmd->add_flag( "--trace", trace, "print `t W_t configuration` for every substep" );
  step_cmd->add_option( "--substep", substep, "stop after the first T substeps (decimal, any size)" );
  add_common( step_cmd, common );
  step_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    auto const x = resolve( doc, from );
    Simulator const sim( doc.net, doc.schedule_or_parallel(), common.budget );
    if ( !substep.empty() )
    {
      BigInt t;
      try
      {
        t = BigInt( substep );
      }
      catch ( std::exception const& )
      {
        throw Error( ErrorKind::input, "--substep expects a decimal integer" );
      }
      out << sim.substep_at( x, t ).to_string() << '\n';
      return;
    }
    if ( trace )
    {
      std::vector<TraceEntry> entries;
      sim.step( x, &entries );
      for ( auto const& e : entries )
        out << e.t << ' ' << block_string( e.block ) << ' ' << e.after.to_string() << '\n';
      return;
    }
    out << sim.step( x ).to_string() << '\n';
  } );

  /* run */
  auto* run_cmd = app.add_subcommand( "run", "print the orbit prefix x, f(x), ..., f^K(x)" );
  network_arg( run_cmd );
  std::uint64_t steps = 0;
  run_cmd->add_option( "configuration", from, "binary string or named configuration" )->required();
  run_cmd->add_option( "--steps", steps, "number of steps K" )->required();
  add_common( run_cmd, common );
  run_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    Simulator const sim( doc.net, doc.schedule_or_parallel(), common.budget );
    auto x = resolve( doc, from );
    out << 0 << ' ' << x.to_string() << '\n';
    for ( std::uint64_t k = 1; k <= steps; ++k )
    {
      x = sim.step( x );
      out << k << ' ' << x.to_string() << '\n';
    }
  } );

  /* graph */
  auto* graph_cmd = app.add_subcommand( "graph", "export the transition graph of f^mu" );
  network_arg( graph_cmd );
  bool dot = false;
  bool json = false;
  auto* dot_flag = graph_cmd->add_flag( "--dot", dot, "Graphviz output" );
  graph_cmd->add_flag( "--json", json, "JSON adjacency output" )->excludes( dot_flag );
  add_common( graph_cmd, common );
  graph_cmd->callback( [&] {
    if ( !dot && !json )
      throw Error( ErrorKind::input, "graph needs --dot or --json" );
    auto const doc = load_network( net_path );
    auto const g = transition_graph( doc.net, doc.schedule_or_parallel(), common.options() );
    out << ( dot ? io::export_dot( g ) : io::export_json( g ) );
  } );

  /* check */
  auto* check_cmd = app.add_subcommand( "check", "decide a dynamical property; prints yes or no" );
  check_cmd->require_subcommand( 1 );
  check_cmd->add_flag( "--witness", witness, "also print a witness or counterexample" );
  auto const check_sub = [&]( char const* name, char const* help ) {
    auto* cmd = check_cmd->add_subcommand( name, help );
    add_common( cmd, common );
    return cmd;
  };

  auto* fp_cmd = check_sub( "fixed-point", "does f^mu have a fixed point" );
  network_arg( fp_cmd );
  fp_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    status = decision( out, exists_fixed_point( doc.net, doc.schedule_or_parallel(), common.options() ), witness, "fixed point" );
  } );

  std::uint64_t k = 0;
  auto* lc_cmd = check_sub( "limit-cycle", "is there a configuration with f^k(x) = x" );
  lc_cmd->add_option( "k", k, "cycle length" )->required()->check( CLI::PositiveNumber );
  network_arg( lc_cmd );
  lc_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    status = decision( out, exists_limit_cycle( doc.net, doc.schedule_or_parallel(), k, common.options() ), witness, "on cycle" );
  } );

  auto* bij_cmd = check_sub( "bijective", "is f^mu a bijection (decided substep by substep)" );
  network_arg( bij_cmd );
  bij_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    status = decision( out, is_bijective_substepwise( doc.net, doc.schedule_or_parallel(), common.options() ) );
  } );

  auto* id_cmd = check_sub( "identity", "is f^mu the identity" );
  network_arg( id_cmd );
  id_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    status = decision( out, is_identity( doc.net, doc.schedule_or_parallel(), common.options() ), witness, "moved" );
  } );

  auto* const_cmd = check_sub( "constant", "is f^mu constant" );
  network_arg( const_cmd );
  const_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    status = decision( out, is_constant( doc.net, doc.schedule_or_parallel(), common.options() ), witness, "image" );
  } );

  std::string cx, cy;
  auto* reach_cmd = check_sub( "reachable", "is y in the orbit of x" );
  reach_cmd->add_option( "x", cx, "source configuration" )->required();
  reach_cmd->add_option( "y", cy, "target configuration" )->required();
  network_arg( reach_cmd );
  reach_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    status = decision( out, reachable( doc.net, doc.schedule_or_parallel(), resolve( doc, cx ), resolve( doc, cy ), common.options() ) );
  } );

  auto* pre_cmd = check_sub( "preimage", "does y have a preimage" );
  pre_cmd->add_option( "y", cy, "target configuration" )->required();
  network_arg( pre_cmd );
  pre_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    status = decision( out, has_preimage( doc.net, doc.schedule_or_parallel(), resolve( doc, cy ), common.options() ), witness, "preimage" );
  } );

  std::string pattern_path;
  auto* sub_cmd = check_sub( "subdynamics", "does the pattern graph embed into the transition graph" );
  sub_cmd->add_option( "pattern", pattern_path, ".graph file" )->required();
  network_arg( sub_cmd );
  sub_cmd->callback( [&] {
    auto const doc = load_network( net_path );
    auto const pattern = io::parse_pattern( io::read_file( pattern_path ) );
    auto const r = subdynamics( doc.net, doc.schedule_or_parallel(), pattern, common.options() );
    if ( !r.diagnostic.empty() )
      err << r.diagnostic << '\n';
    status = decision( out, r.answer );
    if ( witness && r.answer )
      for ( std::size_t v = 0; v < pattern.size(); ++v )
        out << pattern.names[v] << ": " << Configuration::from_rank( doc.net.size(), r.embedding[v] ).to_string() << '\n';
  } );

  /* reduce */
  auto* reduce_cmd = app.add_subcommand( "reduce", "compile an Iter-CVP instance into a gadget network" );
  reduce_cmd->require_subcommand( 1 );
  std::string cvp_path;
  std::function<GadgetInstance( IterCvpInstance const& )> build;
  auto const reduce_sub = [&]( char const* name, char const* help, bool needs_cvp = true ) {
    auto* cmd = reduce_cmd->add_subcommand( name, help );
    auto* opt = cmd->add_option( "--cvp", cvp_path, ".cvp instance" );
    if ( needs_cvp )
      opt->required();
    cmd->callback( [&] {
      IterCvpInstance inst;
      if ( !cvp_path.empty() )
        inst = io::parse_cvp( io::read_file( cvp_path ) );
      out << io::serialize_network( io::to_document( build( inst ) ) );
    } );
    return cmd;
  };
  reduce_sub( "step-bit", "R is set by one step iff the instance is positive" )->preparse_callback( [&]( std::size_t ) {
    build = []( IterCvpInstance const& inst ) { return reduce_step_bit( inst ); };
  } );
  reduce_sub( "preimage", "y has a preimage iff positive" )->preparse_callback( [&]( std::size_t ) {
    build = []( IterCvpInstance const& inst ) { return reduce_preimage( inst ); };
  } );
  reduce_sub( "fixed-point", "a fixed point exists iff positive" )->preparse_callback( [&]( std::size_t ) {
    build = []( IterCvpInstance const& inst ) { return reduce_fixed_point( inst ); };
  } );
  auto* rlc = reduce_sub( "limit-cycle", "a k-cycle exists iff positive" );
  rlc->add_option( "k", k, "cycle length" )->required()->check( CLI::PositiveNumber );
  rlc->preparse_callback( [&]( std::size_t ) {
    build = [&]( IterCvpInstance const& inst ) { return reduce_limit_cycle( inst, k ); };
  } );
  reduce_sub( "constant", "f^mu is constant iff positive" )->preparse_callback( [&]( std::size_t ) {
    build = []( IterCvpInstance const& inst ) { return reduce_constant( inst ); };
  } );
  std::uint64_t m = 0;
  std::size_t prime_index = 1;
  std::string formula;
  std::size_t width = 0;
  auto* rmod = reduce_sub( "modp", "identity iff #models(psi) = m mod p_i", false );
  rmod->add_option( "m", m, "residue" )->required();
  rmod->add_option( "i", prime_index, "prime index, 1-based" )->required()->check( CLI::PositiveNumber );
  rmod->add_option( "--formula", formula, "psi over x0 .. x{w-1}" )->required();
  rmod->add_option( "--width", width, "number of variables of psi (default: largest index + 1)" );
  rmod->preparse_callback( [&]( std::size_t ) {
    build = [&]( IterCvpInstance const& ) {
      auto const psi = io::parse_expr( formula );
      return reduce_modp_identity( psi, width ? width : std::max<std::size_t>( 1u, psi.input_width() ), m, prime_index );
    };
  } );
  auto* rsub = reduce_sub( "subdyn", "the pattern embeds iff positive" );
  rsub->add_option( "pattern", pattern_path, ".graph file" )->required();
  rsub->preparse_callback( [&]( std::size_t ) {
    build = [&]( IterCvpInstance const& inst ) {
      return reduce_subdynamics( io::parse_pattern( io::read_file( pattern_path ) ).to_functional(), inst );
    };
  } );

  /* compile-tm, compile-rs */
  std::string source_path, word;
  auto* tm_cmd = app.add_subcommand( "compile-tm", "compile a machine and input word into an Iter-CVP instance" );
  tm_cmd->add_option( "machine", source_path, ".tm file" )->required();
  tm_cmd->add_option( "--input", word, "input word: one symbol per character, or comma-separated" )->required();
  tm_cmd->callback( [&] {
    auto const tm = io::parse_tm( io::read_file( source_path ) );
    out << io::serialize_cvp( tm_to_circuit( tm, io::parse_tm_word( tm, word ) ) );
  } );

  auto* rs_cmd = app.add_subcommand( "compile-rs", "compile a reaction system into a parallel network" );
  rs_cmd->add_option( "system", source_path, ".rs-sys file" )->required();
  rs_cmd->callback( [&] {
    auto const rs = io::parse_reaction_system( io::read_file( source_path ) );
    out << io::serialize_network( io::to_document( reaction_to_ban( rs ), mu_par( rs.size() ) ) );
  } );

  /* gen */
  auto* gen_cmd = app.add_subcommand( "gen", "generate backbone networks" );
  gen_cmd->require_subcommand( 1 );
  std::size_t gen_n = 0;
  auto* gn_cmd = gen_cmd->add_subcommand( "gn", "the prime backbone g_n" );
  gn_cmd->add_option( "n", gen_n, "backbone parameter" )->required()->check( CLI::Range( 2, 64 ) );
  gn_cmd->callback( [&] {
    auto const b = build_gn( gen_n );
    auto doc = io::to_document( b.net, b.schedule );
    doc.layout.push_back( { "P", 0, b.net.size() } );
    out << io::serialize_network( doc );
  } );
  auto* counter_cmd = gen_cmd->add_subcommand( "counter", "g_n with an n-bit saturating counter" );
  counter_cmd->add_option( "n", gen_n, "counter width" )->required()->check( CLI::Range( 2, 64 ) );
  counter_cmd->callback( [&] { out << io::serialize_network( io::to_document( build_counter_network( gen_n ) ) ); } );

  /* oracle */
  auto* oracle_cmd = app.add_subcommand( "oracle", "brute-force reference deciders" );
  oracle_cmd->require_subcommand( 1 );
  auto* iter_cmd = oracle_cmd->add_subcommand( "iter-cvp", "does some iterate of C from x set bit i" );
  iter_cmd->add_option( "instance", cvp_path, ".cvp file" )->required();
  iter_cmd->callback( [&] { status = decision( out, iter_cvp_oracle( io::parse_cvp( io::read_file( cvp_path ) ) ) ); } );

  /* search */
  auto* search_cmd = app.add_subcommand( "search", "constructive searches" );
  search_cmd->require_subcommand( 1 );
  std::size_t search_n = 0;
  auto* xor_cmd = search_cmd->add_subcommand( "xor-identity", "XOR network whose step is the identity with a non-loop arc" );
  xor_cmd->add_option( "n", search_n, "network size" )->required();
  xor_cmd->callback( [&] {
    auto const found = search_xor_identity( search_n );
    out << io::serialize_network( io::to_document( found.net, found.schedule ) );
  } );

  std::vector<char const*> argv{ "ban" };
  for ( auto const& a : args )
    argv.push_back( a.c_str() );
  try
  {
    app.parse( static_cast<int>( argv.size() ), argv.data() );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e, out, err );
    return code == 0 ? 0 : 2;
  }
  catch ( Error const& e )
  {
    err << e.what() << '\n';
    return 2;
  }
  return status;
}

} // namespace ban
