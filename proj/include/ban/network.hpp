#pragma once

#include "ban/configuration.hpp"
#include "ban/exec.hpp"
#include "ban/expr.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ban
{

/*! \brief A Boolean automata network: n local functions f_i : B^n -> B. */
class Network
{
public:
  Network() = default;
  /* n = locals.size(); every local may only read x_0..x_{n-1} */
  explicit Network( std::vector<Expr> locals );

  static Network identity( std::size_t n );

  std::size_t size() const noexcept { return locals_.size(); }
  Expr const& local( std::size_t i ) const { return locals_.at( i ); }
  std::span<Expr const> locals() const noexcept { return locals_; }

  /* f(x) = (f_0(x), ..., f_{n-1}(x)) */
  Configuration parallel_image( Configuration const& x ) const;

private:
  std::vector<Expr> locals_;
};

/* f_I(x) = (f_i(x))_{i in I}, I taken in ascending order */
Configuration eval_local_set( Network const& net, std::span<std::size_t const> indices, Configuration const& x );

struct InfluenceGraph
{
  std::size_t n = 0;
  /* (j, i): automaton j effectively influences f_i; sorted */
  std::vector<std::pair<std::size_t, std::size_t>> arcs;

  bool has_arc( std::size_t from, std::size_t to ) const;
  bool has_non_loop_arc() const;
};

/* semantic dependencies, found by exhaustive flip tests over B^n */
InfluenceGraph influence_graph( Network const& net, ExhaustiveOptions const& options = { .limit = 20 } );

} // namespace ban
