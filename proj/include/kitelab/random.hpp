#pragma once

#include <cstdint>
#include <random>

namespace kitelab {

/// Uniform draw from [lo, hi]. Plain modulo reduction keeps streams
/// identical across standard libraries, which std distributions do not.
inline std::int64_t draw(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi)
{
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(span == 0 ? rng() : rng() % span);
}

inline bool coin(std::mt19937_64 &rng) { return (rng() & 1u) != 0; }

} // namespace kitelab
