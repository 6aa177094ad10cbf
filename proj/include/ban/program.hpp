#pragma once

#include "ban/expr.hpp"
#include "ban/network.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ban
{

/*! \brief Straight-line form of an Expr, evaluated over 64-bit lanes.
 *
 * Every lane of a word is an independent valuation, so one run evaluates
 * the expression on 64 configurations at once. Shared DAG nodes are
 * emitted once. N-ary operators are lowered to binary chains.
 */
class Program
{
public:
  struct Instr
  {
    Op op;
    std::uint32_t a = 0, b = 0, c = 0;
  };

  Program() = default;
  explicit Program( Expr const& expr );

  std::size_t size() const noexcept { return code_.size(); }
  std::span<std::size_t const> support() const noexcept { return support_; }

  /* `state[j]` holds the lanes of variable j; `scratch` must have size() words */
  std::uint64_t run( std::uint64_t const* state, std::uint64_t* scratch ) const
  {
    for ( std::size_t k = 0; k < code_.size(); ++k )
    {
      auto const& in = code_[k];
      std::uint64_t v;
      switch ( in.op )
      {
      case Op::var: v = state[in.a]; break;
      case Op::constant: v = in.a ? ~std::uint64_t{ 0 } : 0u; break;
      case Op::not_: v = ~scratch[in.a]; break;
      case Op::and_: v = scratch[in.a] & scratch[in.b]; break;
      case Op::or_: v = scratch[in.a] | scratch[in.b]; break;
      case Op::xor_: v = scratch[in.a] ^ scratch[in.b]; break;
      default: v = ( scratch[in.a] & scratch[in.b] ) | ( ~scratch[in.a] & scratch[in.c] ); break;
      }
      scratch[k] = v;
    }
    return scratch[code_.size() - 1u];
  }

private:
  std::vector<Instr> code_;
  std::vector<std::size_t> support_;
};

/* one Program per local function */
class CompiledNetwork
{
public:
  CompiledNetwork() = default;
  explicit CompiledNetwork( Network const& net );

  std::size_t size() const noexcept { return locals_.size(); }
  std::size_t scratch_size() const noexcept { return scratch_; }
  Program const& local( std::size_t i ) const { return locals_[i]; }

  std::uint64_t eval( std::size_t i, std::uint64_t const* state, std::uint64_t* scratch ) const
  {
    return locals_[i].run( state, scratch );
  }

private:
  std::vector<Program> locals_;
  std::size_t scratch_ = 1;
};

} // namespace ban
