#pragma once

#include "ban/configuration.hpp"
#include "ban/dynamics.hpp"
#include "ban/exec.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ban
{

/*! \brief A subcube of B^n: `free` automata enumerated, the rest pinned to `base`.
 *
 * Index k assigns bit (F-1-m) of k to automaton free[m], F = free.size(),
 * so for the full space the index equals the configuration rank.
 */
struct Subspace
{
  Configuration base;
  std::vector<std::size_t> free;

  static Subspace full( std::size_t n );
  /* automata outside `free` keep their value in `base` */
  static Subspace fixing( Configuration base, std::vector<std::size_t> free );

  std::size_t dimension() const noexcept { return free.size(); }
  std::uint64_t size() const { return space_size( free.size() ); }
  Configuration at( std::uint64_t k ) const;
};

/* Scan kernels over B^n. `serial` runs the reference fold one configuration at
 * a time; `parallel` runs bit-sliced batches of 64 under OpenMP. Both return
 * identical results and are cross-checked in the test suite. */
namespace kernels
{

/* rank of f^{mu}(x) for every x in the subspace, by subspace index; needs n <= 63 */
std::vector<std::uint64_t> image_ranks( Simulator const& sim, Subspace const& space, ExecPolicy policy );

/* rank of f^(W)(x) for every x in B^n */
std::vector<std::uint64_t> block_image_ranks( Simulator const& sim, Block const& block, ExecPolicy policy );

/* true iff some x in B^n has f_i(x) != f_i(x with bit j flipped) */
bool influences( Simulator const& sim, std::size_t j, std::size_t i, ExecPolicy policy );

/* first subspace index whose image differs from its input, or `none` */
std::uint64_t first_moved( Simulator const& sim, Subspace const& space, ExecPolicy policy );

inline constexpr std::uint64_t none = ~std::uint64_t{ 0 };

} // namespace kernels

} // namespace ban
