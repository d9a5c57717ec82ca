#pragma once

// Cardinalities of A+A and A-A for sets packed into a single machine word.
// This is the inner loop of exhaustive enumeration, so it avoids IntSet
// entirely: bit i of the mask means i is in A.

#include <bit>
#include <cstdint>

namespace mstd {

struct MaskCounts {
    int sum_card = 0;
    int diff_card = 0;

    int excess() const noexcept { return sum_card - diff_card; }
};

namespace detail {

inline int popcount128(unsigned __int128 x)
{
    return std::popcount(static_cast<std::uint64_t>(x)) + std::popcount(static_cast<std::uint64_t>(x >> 64));
}

}  // namespace detail

/// Requires a nonzero mask. Sets living in [0, 32) keep their sums in one
/// 64-bit word; wider ones (up to bit 63) fall back to 128-bit sums.
inline MaskCounts mask_counts(std::uint64_t mask)
{
    // Nonnegative differences: bit j <=> j = a - i for some a, i in A.
    std::uint64_t diffs = 0;
    MaskCounts out;
    if ((mask >> 32) == 0) {
        std::uint64_t sums = 0;
        for (std::uint64_t t = mask; t; t &= t - 1) {
            const int i = std::countr_zero(t);
            sums |= mask << i;
            diffs |= mask >> i;
        }
        out.sum_card = std::popcount(sums);
    } else {
        unsigned __int128 sums = 0;
        for (std::uint64_t t = mask; t; t &= t - 1) {
            const int i = std::countr_zero(t);
            sums |= static_cast<unsigned __int128>(mask) << i;
            diffs |= mask >> i;
        }
        out.sum_card = detail::popcount128(sums);
    }
    out.diff_card = 2 * std::popcount(diffs) - 1;
    return out;
}

}  // namespace mstd
