#pragma once

// Slow, obviously-correct reference computations used to cross-check the
// library. Nothing here shares code with include/mstd.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Set = std::set<std::int64_t>;

inline Set sums(const Set& a, const Set& b)
{
    Set out;
    for (auto x : a)
        for (auto y : b) out.insert(x + y);
    return out;
}

inline Set diffs(const Set& a, const Set& b)
{
    Set out;
    for (auto x : a)
        for (auto y : b) out.insert(x - y);
    return out;
}

inline Set times(const Set& a, unsigned k)
{
    if (k == 0) return {0};
    Set out = a;
    for (unsigned i = 1; i < k; ++i) out = sums(out, a);
    return out;
}

/// sA - dA
inline Set form(const Set& a, unsigned s, unsigned d)
{
    if (s == 0) return diffs({0}, times(a, d));
    if (d == 0) return times(a, s);
    return diffs(times(a, s), times(a, d));
}

inline Set from_mask(std::uint64_t mask)
{
    Set out;
    for (int i = 0; i < 64; ++i)
        if (mask >> i & 1) out.insert(i);
    return out;
}

inline std::int64_t excess(const Set& a)
{
    return static_cast<std::int64_t>(sums(a, a).size()) - static_cast<std::int64_t>(diffs(a, a).size());
}

/// Random subset of [lo, hi] with each element kept with probability p.
inline Set random_set(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, double p)
{
    std::bernoulli_distribution keep(p);
    Set out;
    for (auto v = lo; v <= hi; ++v)
        if (keep(rng)) out.insert(v);
    if (out.empty()) out.insert(lo);
    return out;
}

/// Prefix rule: every nonempty prefix has more 1s than 0s and no earlier
/// prefix beats the final excess.
inline bool ballot(const std::vector<int>& seq)
{
    int e = 0;
    int best = 0;
    for (int b : seq) {
        e += b ? 1 : -1;
        if (e <= 0) return false;
        best = std::max(best, e);
    }
    return !seq.empty() && e == best;
}

inline bool bidirectional(const std::vector<int>& seq)
{
    return ballot(seq) && ballot(std::vector<int>(seq.rbegin(), seq.rend()));
}

inline std::vector<int> bits_of(std::uint64_t mask, unsigned m)
{
    std::vector<int> out(m);
    for (unsigned i = 0; i < m; ++i) out[i] = static_cast<int>(mask >> i & 1);
    return out;
}

/// No k consecutive non-members among window indices -1 .. m-2, where -1 is
/// always a non-member.
inline bool no_long_gap(std::uint64_t window_mask, int k, int m)
{
    if (m < k) return true;
    int run = 1;
    if (run >= k) return false;
    for (int i = 0; i <= m - 2; ++i) {
        if (window_mask >> i & 1) run = 0;
        else ++run;
        if (run >= k) return false;
    }
    return run < k;
}

}  // namespace oracle
