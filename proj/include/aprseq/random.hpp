#pragma once

// Seeded generation helpers. Distributions are implemented here on top of the
// raw engine output so that a given seed produces the same values with every
// standard library.

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace aprseq {

using Rng = std::mt19937_64;

/// Uniform value in [0, bound) by rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

/// Uniform integer in the closed range [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());  // full 64-bit range
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + uniform_below(rng, span));
}

inline bool bernoulli(Rng& rng, std::uint64_t numerator, std::uint64_t denominator) {
  return uniform_below(rng, denominator) < numerator;
}

/// splitmix64 finalizer; used to derive per-task seeds from (master seed, task index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace aprseq
