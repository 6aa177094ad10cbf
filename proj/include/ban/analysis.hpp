#pragma once

#include "ban/configuration.hpp"
#include "ban/dynamics.hpp"
#include "ban/exec.hpp"
#include "ban/kernels.hpp"
#include "ban/network.hpp"
#include "ban/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ban
{

/* A yes/no answer with an optional certificate (a preimage, a periodic point,
 * a counterexample, or the constant image, depending on the decider). */
struct Decision
{
  bool answer = false;
  std::optional<Configuration> witness;

  explicit operator bool() const noexcept { return answer; }
};

/* direct simulation; ℓ must fit the budget */
bool is_step( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, Configuration const& y,
              std::uint64_t budget = default_substep_budget );
bool image_bit( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, std::size_t j,
                std::uint64_t budget = default_substep_budget );
bool is_fixed_point( Network const& net, BlockParallelSchedule const& mu, Configuration const& x,
                     std::uint64_t budget = default_substep_budget );

/* exhaustive scans over B^n (n <= options.limit) */
Decision has_preimage( Network const& net, BlockParallelSchedule const& mu, Configuration const& y,
                       ExhaustiveOptions const& options = {} );
Decision exists_fixed_point( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options = {} );
/* some x with f^k(x) = x, i.e. a cycle whose length divides k; k >= 1 */
Decision exists_limit_cycle( Network const& net, BlockParallelSchedule const& mu, std::uint64_t k,
                             ExhaustiveOptions const& options = {} );
/* some cycle of length exactly k (k distinct configurations) */
Decision exists_cycle_of_length( Network const& net, BlockParallelSchedule const& mu, std::uint64_t k,
                                 ExhaustiveOptions const& options = {} );
/* lengths of all cycles of f^{mu}, ascending, with multiplicity */
std::vector<std::uint64_t> cycle_lengths( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options = {} );

/* walks the orbit of x for at most 2^n steps */
bool reachable( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, Configuration const& y,
                ExhaustiveOptions const& options = {} );

/* every distinct substep block map f^(W) is injective */
bool is_bijective_substepwise( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options = {} );
/* the image set of f^{mu} has 2^n elements */
bool is_bijective_bruteforce( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options = {} );

/* witness: a configuration moved by f^{mu} when the answer is no */
Decision is_identity( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options = {} );
Decision is_identity_on( Simulator const& sim, Subspace const& space, ExhaustiveOptions const& options = {} );
/* witness: the common image when the answer is yes */
Decision is_constant( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options = {} );
Decision is_constant_on( Simulator const& sim, Subspace const& space, ExhaustiveOptions const& options = {} );

/*! \brief A pattern digraph as read from text; may violate out-degree <= 1. */
struct PatternGraph
{
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;

  std::size_t size() const noexcept { return names.size(); }
  /* vertex with out-degree > 1, if any */
  std::optional<std::size_t> branching_vertex() const;
  /* functional form; structural error if some out-degree exceeds one */
  FunctionalGraph to_functional() const;
};

struct SubdynamicsResult
{
  bool answer = false;
  /* pi(v) as configuration rank, per pattern vertex */
  std::vector<std::uint64_t> embedding;
  std::string diagnostic;

  explicit operator bool() const noexcept { return answer; }
};

/* is there an injective pi : V(G) -> B^n with f^{mu}(pi(v)) = pi(w) for every arc v -> w */
SubdynamicsResult subdynamics( Network const& net, BlockParallelSchedule const& mu, FunctionalGraph const& pattern,
                               ExhaustiveOptions const& options = {} );
SubdynamicsResult subdynamics( Network const& net, BlockParallelSchedule const& mu, PatternGraph const& pattern,
                               ExhaustiveOptions const& options = {} );
/* same search against an explicit transition table */
SubdynamicsResult embed_pattern( std::vector<std::uint64_t> const& image, FunctionalGraph const& pattern );

struct XorIdentity
{
  Network net;
  BlockParallelSchedule schedule;
};

/* XOR network of size n whose step is the identity although some f_i reads x_j, j != i */
XorIdentity search_xor_identity( std::size_t n );

} // namespace ban
