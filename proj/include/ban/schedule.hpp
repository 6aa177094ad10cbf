#pragma once

#include "ban/network.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ban
{

using BigInt = boost::multiprecision::cpp_int;

/* substep block: automaton ids in ascending order */
using Block = std::vector<std::size_t>;

/*! \brief Block-parallel update mode: a partitioned order of [n].
 *
 * Each o-block is a sequence updated one element per substep; all o-blocks
 * advance together. Every automaton sits in exactly one o-block, and the
 * order inside an o-block is kept verbatim.
 */
class BlockParallelSchedule
{
public:
  BlockParallelSchedule() = default;

  /* validate_schedule: rejects duplicates, missing ids, ids >= n and empty o-blocks */
  static BlockParallelSchedule validate( std::vector<std::vector<std::size_t>> oblocks, std::size_t n );

  std::size_t size() const noexcept { return n_; }
  std::vector<std::vector<std::size_t>> const& oblocks() const noexcept { return oblocks_; }

  /* o-block index and position inside it for every automaton */
  std::size_t oblock_of( std::size_t automaton ) const { return where_.at( automaton ).first; }
  std::size_t position_of( std::size_t automaton ) const { return where_.at( automaton ).second; }

  std::string to_string() const;

  bool operator==( BlockParallelSchedule const& other ) const { return n_ == other.n_ && oblocks_ == other.oblocks_; }

private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> oblocks_;
  std::vector<std::pair<std::size_t, std::size_t>> where_;
};

/* all-singleton schedule: the parallel update mode */
BlockParallelSchedule mu_par( std::size_t n );

/* l = lcm of the o-block lengths */
BigInt lcm_length( BlockParallelSchedule const& mu );

struct BlockSequence
{
  std::vector<Block> blocks;

  std::size_t length() const noexcept { return blocks.size(); }
};

inline constexpr std::uint64_t default_materialization_limit = 1'000'000u;

/* materialized substep sequence W_0..W_{l-1}; capacity error when l > limit */
BlockSequence phi( BlockParallelSchedule const& mu, std::uint64_t limit = default_materialization_limit );

/* W_t without materializing phi(mu); range error when t >= l */
Block block_at( BlockParallelSchedule const& mu, BigInt const& t );

/*! \brief Streams W_0, W_1, ... by advancing one pointer per o-block.
 *
 * Wraps around after W_{l-1}. Starting at an arbitrary t costs one
 * reduction of t modulo each o-block length.
 */
class BlockCursor
{
public:
  explicit BlockCursor( BlockParallelSchedule const& mu, BigInt const& start = 0 );

  /* current block, ascending */
  Block const& block() const noexcept { return block_; }
  /* per-o-block positions (t mod n_k) */
  std::vector<std::size_t> const& positions() const noexcept { return pos_; }

  void advance();

private:
  void rebuild();

  BlockParallelSchedule const* mu_;
  std::vector<std::size_t> pos_;
  Block block_;
};

/*! \brief The k_n smallest primes, with k_n = floor(n^2 / (2 ln n)). */
struct PrimeBackbone
{
  std::size_t n = 0;
  std::vector<std::uint64_t> primes;
  /* cumsums[j] = p_1 + ... + p_j, cumsums[0] = 0 */
  std::vector<std::uint64_t> cumsums;

  std::size_t count() const noexcept { return primes.size(); }
  std::uint64_t total() const noexcept { return cumsums.back(); }
  BigInt product() const;
};

PrimeBackbone gen_primes( std::size_t n );

/* the i-th prime, 1-based (nth_prime(1) == 2) */
std::uint64_t nth_prime( std::size_t i );

struct Backbone
{
  Network net;
  BlockParallelSchedule schedule;
  PrimeBackbone primes;
};

/* g_n: q_{k_n} constant-0 automata in consecutive o-blocks of lengths p_1..p_{k_n} */
Backbone build_gn( std::size_t n );

/* consecutive ranges of lengths p_1..p_{k_n} */
std::vector<std::vector<std::size_t>> backbone_oblocks( PrimeBackbone const& primes );

/* bits needed to count 0..value-1, i.e. ceil(log2(value)) */
std::size_t ceil_log2( BigInt const& value );

} // namespace ban
