#pragma once

#include "ban/expr.hpp"
#include "ban/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

/* Integer templates over MSB-first bit vectors of expressions.
 * Gadget counters and registers are compiled from these. */
namespace ban::circuits
{

using Bits = std::vector<Expr>;

/* variables x_first .. x_{first+width-1}, most significant first */
Bits variables( std::size_t first, std::size_t width );
Bits constant( std::size_t width, BigInt const& value );

Expr all_of( std::vector<Expr> terms );
Expr any_of( std::vector<Expr> terms );

Expr equals( std::span<Expr const> bits, BigInt const& value );
/* bits < value; constant 1 when value >= 2^width */
Expr less_than( std::span<Expr const> bits, BigInt const& value );
Expr at_least( std::span<Expr const> bits, BigInt const& value );

/* value + 1 modulo 2^width (ripple carry) */
Bits increment( std::span<Expr const> bits );

/* bitwise ite over equal-width vectors */
Bits select( Expr const& condition, std::span<Expr const> then_bits, std::span<Expr const> else_bits );

/* output bits of table[value] for every value < table.size(), `otherwise` bits elsewhere */
Bits lookup( std::span<Expr const> bits, std::vector<std::uint64_t> const& table, std::size_t out_width,
             std::span<Expr const> otherwise );

} // namespace ban::circuits
