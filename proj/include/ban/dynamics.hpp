#pragma once

#include "ban/configuration.hpp"
#include "ban/exec.hpp"
#include "ban/network.hpp"
#include "ban/program.hpp"
#include "ban/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ban
{

/* f^(W)(x): f_i(x) for i in W, x_i elsewhere (definitional, evaluates the Expr trees) */
Configuration substep( Network const& net, std::span<std::size_t const> block, Configuration const& x );

struct TraceEntry
{
  std::uint64_t t = 0;
  Block block;
  Configuration after;
};

/*! \brief A network paired with its schedule, compiled for repeated simulation.
 *
 * Single configurations run on one lane; `step_lanes` advances 64
 * configurations at once. The substep budget bounds every call.
 */
class Simulator
{
public:
  Simulator( Network net, BlockParallelSchedule mu, std::uint64_t budget = default_substep_budget );

  Network const& network() const noexcept { return net_; }
  BlockParallelSchedule const& schedule() const noexcept { return mu_; }
  CompiledNetwork const& compiled() const noexcept { return compiled_; }
  BigInt const& length() const noexcept { return length_; }
  std::uint64_t budget() const noexcept { return budget_; }
  std::size_t size() const noexcept { return net_.size(); }

  /* l as a machine integer; capacity error when l exceeds the budget */
  std::uint64_t substeps_per_step() const;

  Configuration step( Configuration const& x, std::vector<TraceEntry>* trace = nullptr ) const;
  /* configuration after the first t substeps, 0 <= t <= l */
  Configuration substep_at( Configuration const& x, BigInt const& t ) const;
  Configuration iterate( Configuration const& x, std::uint64_t k ) const;

  /* one full step on 64 lanes; `state` has size() words, `scratch` scratch_words() */
  void step_lanes( std::uint64_t* state, std::uint64_t* scratch ) const;
  void substep_lanes( Block const& block, std::uint64_t* state, std::uint64_t* scratch ) const;
  std::size_t scratch_words() const noexcept { return compiled_.scratch_size() + net_.size(); }

private:
  void check_input( Configuration const& x ) const;

  Network net_;
  BlockParallelSchedule mu_;
  CompiledNetwork compiled_;
  BigInt length_;
  std::uint64_t budget_;
  /* cached phi(mu) when small enough */
  std::vector<Block> blocks_;
};

Configuration step( Network const& net, BlockParallelSchedule const& mu, Configuration const& x,
                    std::uint64_t budget = default_substep_budget, std::vector<TraceEntry>* trace = nullptr );
Configuration substep_at( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, BigInt const& t,
                          std::uint64_t budget = default_substep_budget );
Configuration iterate( Network const& net, BlockParallelSchedule const& mu, Configuration const& x, std::uint64_t k,
                       std::uint64_t budget = default_substep_budget );

/* step by folding `substep` over phi(mu); the reference the fast paths are checked against */
Configuration reference_step( Network const& net, BlockParallelSchedule const& mu, Configuration const& x,
                              std::uint64_t budget = default_substep_budget );

struct Orbit
{
  std::vector<Configuration> tail;
  std::vector<Configuration> cycle;

  std::size_t period() const noexcept { return cycle.size(); }
};

/* walk from x until a configuration repeats; capacity error after `max_steps` steps */
Orbit orbit( Simulator const& sim, Configuration const& x, std::uint64_t max_steps = std::uint64_t{ 1 } << 24 );
Orbit orbit( Network const& net, BlockParallelSchedule const& mu, Configuration const& x );

/*! \brief Digraph of out-degree at most one over vertices 0..size()-1.
 *
 * Transition graphs use configuration ranks as vertex ids and are total.
 * Pattern graphs read from text keep their vertex names.
 */
struct FunctionalGraph
{
  static constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();

  std::vector<std::uint64_t> out;
  /* empty for transition graphs */
  std::vector<std::string> names;
  /* configuration width for transition graphs, 0 otherwise */
  std::size_t bits = 0;

  std::size_t size() const noexcept { return out.size(); }
  bool is_total() const noexcept;
  std::size_t arc_count() const noexcept;
  std::string label( std::uint64_t v ) const;
};

FunctionalGraph transition_graph( Network const& net, BlockParallelSchedule const& mu, ExhaustiveOptions const& options = {} );

} // namespace ban
