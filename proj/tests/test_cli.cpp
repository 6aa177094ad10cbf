#include "support.hpp"

#include "ban/cli.hpp"
#include "ban/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ban;

namespace
{

struct Run
{
  int status;
  std::string out;
  std::string err;
};

Run run( std::vector<std::string> const& args )
{
  std::ostringstream out, err;
  auto const status = cli_main( args, out, err );
  return { status, out.str(), err.str() };
}

std::string temp_file( std::string const& name, std::string const& content )
{
  auto const dir = std::filesystem::temp_directory_path() / "ban_cli_tests";
  std::filesystem::create_directories( dir );
  auto const path = ( dir / name ).string();
  std::ofstream( path ) << content;
  return path;
}

std::vector<std::string> lines( std::string const& text )
{
  std::vector<std::string> out;
  std::istringstream is( text );
  for ( std::string line; std::getline( is, line ); )
    out.push_back( line );
  return out;
}

std::string const n1_text = "automata: 3\n0: x1\n1: !x2\n2: x0\nschedule: {(0),(1,2)}\n";

} // namespace

TEST_CASE( "cli: phi and step" )
{
  auto const n1 = temp_file( "n1.ban", n1_text );
  auto const phi = run( { "phi", n1 } );
  CHECK( phi.status == 0 );
  CHECK( phi.out == "{0,1}\n{0,2}\n" );

  auto const trace = run( { "step", "--trace", n1, "111" } );
  CHECK( trace.out == "0 {0,1} 101\n1 {0,2} 001\n" );
  CHECK( run( { "step", n1, "111" } ).out == "001\n" );
  CHECK( run( { "step", n1, "111", "--substep", "1" } ).out == "101\n" );
  CHECK( run( { "step", n1, "111", "--substep", "3" } ).status == 2 );
  CHECK( run( { "run", n1, "111", "--steps", "2" } ).out == "0 111\n1 001\n2 000\n" );
}

TEST_CASE( "cli: counter trace" )
{
  auto const gen = run( { "gen", "counter", "3" } );
  REQUIRE( gen.status == 0 );
  auto const path = temp_file( "counter3.ban", gen.out );
  auto const trace = lines( run( { "step", "--trace", path, std::string( 17, '0' ) + "010" } ).out );
  REQUIRE( trace.size() == 210u );
  CHECK( trace.back().substr( trace.back().rfind( ' ' ) + 1 ) == std::string( 17, '0' ) + "111" );
  CHECK( trace.front().rfind( "0 {", 0 ) == 0u );
  CHECK( run( { "step", path, "y" } ).out == std::string( 17, '0' ) + "111\n" );
  CHECK( run( { "step", "--budget", "100", path, "y" } ).status == 2 );

  auto const gn = run( { "gen", "gn", "3" } );
  CHECK( io::parse_network( gn.out ).net.size() == 17u );
}

TEST_CASE( "cli: decisions and exit codes" )
{
  auto const id = temp_file( "id.ban", "automata: 3\nschedule: {(0,1,2)}\n" );
  auto const n1 = temp_file( "n1.ban", n1_text );
  auto const yes = run( { "check", "identity", id } );
  CHECK( yes.status == 0 );
  CHECK( yes.out == "yes\n" );
  auto const no = run( { "check", "--witness", "identity", n1 } );
  CHECK( no.status == 1 );
  CHECK( no.out.rfind( "no\nmoved: ", 0 ) == 0u );
  CHECK( run( { "check", "fixed-point", n1 } ).status == 1 );
  CHECK( run( { "check", "fixed-point", id } ).status == 0 );
  CHECK( run( { "check", "limit-cycle", "1", id } ).status == 0 );
  CHECK( run( { "check", "bijective", id } ).out == "yes\n" );
  CHECK( run( { "check", "bijective", n1 } ).out == "no\n" );
  CHECK( run( { "check", "constant", n1 } ).status == 1 );
  CHECK( run( { "check", "reachable", "111", "000", n1 } ).status == 0 );
  CHECK( run( { "check", "reachable", "000", "010", n1 } ).status == 1 );
  CHECK( run( { "check", "preimage", "001", n1 } ).status == 0 );
  CHECK( run( { "check", "--serial", "preimage", "001", n1 } ).status == 2 );
  CHECK( run( { "check", "preimage", "--serial", "001", n1 } ).status == 0 );

  auto const loop = temp_file( "loop.graph", "a -> a\n" );
  auto const branch = temp_file( "branch.graph", "a -> b\na -> c\n" );
  CHECK( run( { "check", "subdynamics", loop, id } ).status == 0 );
  auto const b = run( { "check", "subdynamics", branch, id } );
  CHECK( b.status == 1 );
  CHECK_FALSE( b.err.empty() );
}

TEST_CASE( "cli: errors exit 2" )
{
  auto const bad = temp_file( "bad.ban", "automata: 2\n0: x5\n" );
  auto const r = run( { "check", "identity", bad } );
  CHECK( r.status == 2 );
  CHECK( r.out.empty() );
  CHECK( r.err.find( "line 2" ) != std::string::npos );
  CHECK( run( { "check", "identity", "/nonexistent/file.ban" } ).status == 2 );
  CHECK( run( { "frobnicate" } ).status == 2 );
  CHECK( run( {} ).status == 2 );
  CHECK( run( { "--help" } ).status == 0 );
  auto const n1 = temp_file( "n1.ban", n1_text );
  CHECK( run( { "step", n1, "11" } ).status == 2 );
  CHECK( run( { "graph", n1 } ).status == 2 );
}

TEST_CASE( "cli: graph export" )
{
  auto const n1 = temp_file( "n1.ban", n1_text );
  auto const json = run( { "graph", "--json", n1 } );
  CHECK( json.status == 0 );
  CHECK( io::parse_json_graph( json.out ).out == transition_graph( testing::n1(), testing::mu1() ).out );
  auto const dot = run( { "graph", "--dot", n1 } );
  CHECK( dot.out.rfind( "digraph", 0 ) == 0u );
  CHECK( run( { "graph", "--dot", "--json", n1 } ).status == 2 );
}

TEST_CASE( "cli: reductions agree with the oracle" )
{
  std::mt19937_64 rng( 404 );
  for ( int trial = 0; trial < 6; ++trial )
  {
    auto const inst = testing::random_cvp( rng, 2 );
    auto const cvp = temp_file( "inst.cvp", io::serialize_cvp( inst ) );
    auto const oracle = run( { "oracle", "iter-cvp", cvp } );
    REQUIRE( oracle.status != 2 );
    bool const positive = oracle.status == 0;
    CHECK( positive == iter_cvp_oracle( inst ) );

    auto const sb = temp_file( "sb.ban", run( { "reduce", "step-bit", "--cvp", cvp } ).out );
    auto const doc = io::parse_network( io::read_file( sb ) );
    CHECK( run( { "step", sb, "x" } ).out == doc.configuration( positive ? "y+" : "y-" )->to_string() + "\n" );

    auto const fp = temp_file( "fp.ban", run( { "reduce", "fixed-point", "--cvp", cvp } ).out );
    CHECK( run( { "check", "fixed-point", fp } ).status == ( positive ? 0 : 1 ) );
    auto const pre = temp_file( "pre.ban", run( { "reduce", "preimage", "--cvp", cvp } ).out );
    CHECK( run( { "check", "preimage", "y", pre } ).status == ( positive ? 0 : 1 ) );
    auto const lc = temp_file( "lc.ban", run( { "reduce", "limit-cycle", "2", "--cvp", cvp } ).out );
    CHECK( run( { "check", "limit-cycle", "2", lc } ).status == ( positive ? 0 : 1 ) );
    auto const cst = temp_file( "cst.ban", run( { "reduce", "constant", "--cvp", cvp } ).out );
    CHECK( run( { "check", "constant", cst } ).status == ( positive ? 0 : 1 ) );
    auto const pattern = temp_file( "tail.graph", "a -> b\nb -> a\nc -> a\n" );
    auto const sd = temp_file( "sd.ban", run( { "reduce", "subdyn", pattern, "--cvp", cvp } ).out );
    CHECK( run( { "check", "subdynamics", pattern, sd } ).status == ( positive ? 0 : 1 ) );
  }
  auto const modp = temp_file( "modp.ban", run( { "reduce", "modp", "1", "1", "--formula", "x0 & x1" } ).out );
  CHECK( run( { "check", "identity", modp } ).status == 0 );
  auto const modp0 = temp_file( "modp0.ban", run( { "reduce", "modp", "0", "1", "--formula", "x0 & x1" } ).out );
  CHECK( run( { "check", "identity", modp0 } ).status == 1 );
}

TEST_CASE( "cli: compilers and search" )
{
  auto const tm = temp_file( "scan.tm", "states: scan yes\nalphabet: b a\naccept: yes\nscan b -> scan b R\nscan a -> yes a S\n" );
  auto const yes = temp_file( "yes.cvp", run( { "compile-tm", tm, "--input", "bba" } ).out );
  auto const no = temp_file( "no.cvp", run( { "compile-tm", tm, "--input", "bbb" } ).out );
  CHECK( run( { "oracle", "iter-cvp", yes } ).status == 0 );
  CHECK( run( { "oracle", "iter-cvp", no } ).status == 1 );
  CHECK( run( { "compile-tm", tm, "--input", "bxb" } ).status == 2 );

  auto const rs = temp_file( "sys.rs-sys", "entities: a b\na -> b\nb ; a -> a\n" );
  auto const net = temp_file( "sys.ban", run( { "compile-rs", rs } ).out );
  CHECK( run( { "run", net, "10", "--steps", "3" } ).out == "0 10\n1 01\n2 10\n3 01\n" );

  auto const found = run( { "search", "xor-identity", "3" } );
  REQUIRE( found.status == 0 );
  auto const path = temp_file( "xor.ban", found.out );
  CHECK( run( { "check", "identity", path } ).status == 0 );
  CHECK( run( { "search", "xor-identity", "1" } ).status == 2 );
}
