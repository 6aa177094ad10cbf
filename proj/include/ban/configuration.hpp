#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ban
{

/*! \brief A point of B^n: one Boolean state per automaton.
 *
 * Textual form is a binary string with automaton 0 leftmost. The integer
 * rank reads that string as an MSB-first binary number, so
 * `Configuration::from_rank(3, 5).to_string() == "101"`.
 */
class Configuration
{
public:
  Configuration() = default;
  explicit Configuration( std::size_t n );

  static Configuration from_string( std::string_view bits );
  static Configuration from_rank( std::size_t n, std::uint64_t rank );
  static Configuration zeros( std::size_t n ) { return Configuration( n ); }
  static Configuration ones( std::size_t n );

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0u; }

  bool operator[]( std::size_t i ) const noexcept { return ( words_[i >> 6] >> ( i & 63u ) ) & 1u; }
  bool get( std::size_t i ) const;
  void set( std::size_t i, bool value );
  void flip( std::size_t i );

  /* requires size() <= 64 */
  std::uint64_t rank() const;

  /* x_I, keeping the relative order of `indices` */
  Configuration restrict( std::span<std::size_t const> indices ) const;

  /* concatenation, `*this` first */
  Configuration append( Configuration const& tail ) const;

  std::string to_string() const;
  std::size_t count_ones() const;
  std::size_t hash() const noexcept;

  std::span<std::uint64_t const> words() const noexcept { return words_; }

  bool operator==( Configuration const& other ) const = default;

private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0u;
};

/* configurations of size n are indexed by rank; requires n <= 63 */
std::uint64_t space_size( std::size_t n );

} // namespace ban

template<>
struct std::hash<ban::Configuration>
{
  std::size_t operator()( ban::Configuration const& x ) const noexcept { return x.hash(); }
};
