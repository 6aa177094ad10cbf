#pragma once

#include "ban/configuration.hpp"
#include "ban/dynamics.hpp"
#include "ban/expr.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ban
{

/*! \brief Iterated circuit value: does C^t(x~)_i = 1 for some t >= 0? */
struct IterCvpInstance
{
  /* C_j over inputs x_0..x_{n-1}, n = start.size() */
  std::vector<Expr> circuit;
  Configuration start;
  std::size_t output = 0;

  std::size_t size() const noexcept { return start.size(); }
  /* widths consistent and output < n */
  void validate() const;
};

/* iterates C from x~ until bit i is set or a configuration repeats; n <= 24 */
bool iter_cvp_oracle( IterCvpInstance const& inst );

/* consecutive automata [first, first + count) */
struct Range
{
  std::string name;
  std::size_t first = 0;
  std::size_t count = 0;

  std::size_t last() const noexcept { return first + count - 1u; }
  bool contains( std::size_t i ) const noexcept { return i >= first && i < first + count; }
};

/*! \brief A reduction output: network, schedule, named ranges and configurations. */
struct GadgetInstance
{
  Network net;
  BlockParallelSchedule schedule;
  std::vector<Range> layout;
  std::vector<std::pair<std::string, Configuration>> configurations;
  std::vector<std::pair<std::string, std::string>> params;

  Range const& range( std::string const& name ) const;
  bool has_range( std::string const& name ) const;
  Configuration const& configuration( std::string const& name ) const;
  bool has_configuration( std::string const& name ) const;
  std::optional<std::string> param( std::string const& key ) const;
};

/* g_n plus an n-bit counter that saturates at 2^n - 1 */
GadgetInstance build_counter_network( std::size_t n );

/* y+ when the instance is positive, y- = x otherwise */
GadgetInstance reduce_step_bit( IterCvpInstance const& inst );
/* target y has a preimage iff the instance is positive */
GadgetInstance reduce_preimage( IterCvpInstance const& inst );
/* a fixed point exists iff the instance is positive */
GadgetInstance reduce_fixed_point( IterCvpInstance const& inst );
/* a cycle of length k exists iff the instance is positive; no shorter period */
GadgetInstance reduce_limit_cycle( IterCvpInstance const& inst, std::uint64_t k );
/* constant map iff the instance is positive */
GadgetInstance reduce_constant( IterCvpInstance const& inst );

/* identity iff #models(psi) = m mod p_i; psi reads x_0..x_{width-1}, i is 1-based */
GadgetInstance reduce_modp_identity( Expr const& psi, std::size_t width, std::uint64_t m, std::size_t i );
/* number of satisfying assignments of psi over `width` variables (truth-table oracle) */
std::uint64_t model_count( Expr const& psi, std::size_t width );

/* G embeds in the output's dynamics iff the instance is positive; G must be functional */
GadgetInstance reduce_subdynamics( FunctionalGraph const& pattern, IterCvpInstance const& inst );

/*! \brief Linear-bounded Turing machine over a tape of |w| cells.
 *
 * Symbols and states are coded in declaration order. A missing transition
 * halts without accepting; the machine accepts by entering `accept`.
 */
struct TuringMachine
{
  enum class Move
  {
    left,
    right,
    stay
  };

  struct Action
  {
    std::size_t state;
    std::size_t symbol;
    Move move;
  };

  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<std::string> input_alphabet;
  std::size_t blank = 0;
  std::size_t initial = 0;
  std::size_t accept = 0;
  std::map<std::pair<std::size_t, std::size_t>, Action> delta;

  std::size_t state_index( std::string const& name ) const;
  std::size_t symbol_index( std::string const& name ) const;
  /* word given as symbol indices */
  std::vector<std::size_t> encode_word( std::vector<std::string> const& word ) const;
};

/* direct simulation; detects loops by configuration repetition */
bool tm_accepts( TuringMachine const& tm, std::vector<std::size_t> const& word );

/* Iter-CVP circuit whose iteration runs one machine step; output is the accept bit */
IterCvpInstance tm_to_circuit( TuringMachine const& tm, std::vector<std::size_t> const& word );

struct Reaction
{
  std::vector<std::size_t> reactants;
  std::vector<std::size_t> inhibitors;
  std::vector<std::size_t> products;
};

struct ReactionSystem
{
  std::vector<std::string> entities;
  std::vector<Reaction> reactions;

  std::size_t size() const noexcept { return entities.size(); }
};

/* f_i = OR over reactions producing i of (AND reactants AND NOT inhibitors) */
Network reaction_to_ban( ReactionSystem const& rs );
/* one step of set semantics: union of the products of enabled reactions */
std::vector<bool> reaction_step( ReactionSystem const& rs, std::vector<bool> const& state );

} // namespace ban
