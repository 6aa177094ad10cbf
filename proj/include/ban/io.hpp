#pragma once

#include "ban/analysis.hpp"
#include "ban/dynamics.hpp"
#include "ban/expr.hpp"
#include "ban/gadgets.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/* Text formats. Every parser throws ParseError with a 1-based line and column;
 * the category is syntax, width (index or length against n) or duplicate_index. */
namespace ban::io
{

/* x<k>, 0, 1, !, &, ^, |, ite(c,t,e), parentheses; precedence ! > & > ^ > | */
Expr parse_expr( std::string_view text );
/* minimal parentheses; a chain of one operator re-parses to a single node */
std::string format_expr( Expr const& expr );

/*! \brief Contents of a .ban file: network, optional schedule, gadget sidecar. */
struct NetworkDocument
{
  Network net;
  std::optional<BlockParallelSchedule> schedule;
  std::vector<Range> layout;
  std::vector<std::pair<std::string, Configuration>> configurations;
  std::vector<std::pair<std::string, std::string>> params;

  /* the parsed schedule, or mu_par */
  BlockParallelSchedule schedule_or_parallel() const;
  Configuration const* configuration( std::string const& name ) const;
};

NetworkDocument parse_network( std::string_view text );
std::string serialize_network( NetworkDocument const& doc );
NetworkDocument to_document( GadgetInstance const& gadget );
NetworkDocument to_document( Network const& net, std::optional<BlockParallelSchedule> schedule = std::nullopt );

/* {(0),(1,2)} */
BlockParallelSchedule parse_schedule( std::string_view text, std::size_t n );

/* inputs: n, <j>: <expr> lines, x: <bits>, i: <index> */
IterCvpInstance parse_cvp( std::string_view text );
std::string serialize_cvp( IterCvpInstance const& inst );

/* states:, alphabet:, input:, blank:, initial:, accept:, then `q a -> r b L|R|S` lines */
TuringMachine parse_tm( std::string_view text );
/* one symbol per character, or comma-separated symbol names */
std::vector<std::size_t> parse_tm_word( TuringMachine const& tm, std::string_view word );

/* entities: ..., then `reactants ; inhibitors -> products` lines */
ReactionSystem parse_reaction_system( std::string_view text );

/* `v -> w` per arc, `v` for an isolated vertex; vertices numbered by first appearance */
PatternGraph parse_pattern( std::string_view text );

std::string export_dot( FunctionalGraph const& graph );
/* {"edges":[["x","y"],...],"n":bits}, keys sorted */
std::string export_json( FunctionalGraph const& graph );
FunctionalGraph parse_json_graph( std::string_view text );

std::string read_file( std::string const& path );

} // namespace ban::io
