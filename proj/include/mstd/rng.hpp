#pragma once

#include <cstdint>
#include <random>

namespace mstd {

/// SplitMix64 finalizer; a bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Engine for one trial. The stream depends only on (seed, trial), never on
/// which worker runs the trial or in what order.
inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial)
{
    return std::mt19937_64(mix64(mix64(seed) ^ mix64(trial + 0x632be59bd9b4e019ull)));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::mt19937_64& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace mstd
