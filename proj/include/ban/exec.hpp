#pragma once

#include <cstddef>
#include <cstdint>

namespace ban
{

/* serial: one configuration at a time through the definitional fold (reference);
 * parallel: bit-sliced OpenMP kernels (64 configurations per machine word). */
enum class ExecPolicy
{
  serial,
  parallel
};

inline constexpr std::uint64_t default_substep_budget = 10'000'000u;

struct ExhaustiveOptions
{
  /* largest n for which B^n (or the scanned subspace) may be enumerated */
  std::size_t limit = 22;
  ExecPolicy policy = ExecPolicy::parallel;
  /* substeps allowed per step */
  std::uint64_t budget = default_substep_budget;
};

} // namespace ban
