#pragma once

// Explicit families of sum-dominant sets: Nathanson's perturbed symmetric
// sets, base expansion, middle insertion between two fixed fringes, and the
// bidirectional ballot sequences used to count admissible middles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mstd/classify.hpp"
#include "mstd/error.hpp"
#include "mstd/intset.hpp"

namespace mstd {

// ---------------------------------------------------------------------------
// Nathanson family

/// m >= 4, 1 <= d <= m-1, d != m/2, and k >= 3 (d < m/2) or k >= 4 (d > m/2).
struct NathansonParams {
    std::int64_t m = 4;
    std::int64_t d = 1;
    std::int64_t k = 3;

    void validate() const
    {
        auto fail = [](const std::string& clause) {
            throw Error(ErrorKind::parameter, "construct", "nathanson: violated " + clause);
        };
        if (m < 4) fail("m >= 4");
        if (d < 1 || d > m - 1) fail("1 <= d <= m-1");
        if (2 * d == m) fail("d != m/2");
        if (2 * d < m && k < 3) fail("k >= 3 when d < m/2");
        if (2 * d > m && k < 4) fail("k >= 4 when d > m/2");
    }

    /// max of the constructed set, a* = (k+1)m - 2d.
    std::int64_t diameter() const { return (k + 1) * m - 2 * d; }
};

/// A = B u L u (a* - B) u {m} with B = {0..m-1} \ {d}, L = {m-d, 2m-d, ..., km-d}.
inline IntSet nathanson(const NathansonParams& p)
{
    p.validate();
    const std::int64_t reflect = p.diameter();
    std::vector<std::int64_t> elems;
    for (std::int64_t b = 0; b < p.m; ++b) {
        if (b == p.d) continue;
        elems.push_back(b);
        elems.push_back(reflect - b);
    }
    for (std::int64_t j = 1; j <= p.k; ++j) elems.push_back(j * p.m - p.d);
    elems.push_back(p.m);
    return IntSet(std::move(elems));
}

/// Every valid parameter triple whose set has diameter <= max_diameter.
inline std::vector<NathansonParams> nathanson_params_up_to(std::int64_t max_diameter)
{
    std::vector<NathansonParams> out;
    for (std::int64_t m = 4; 3 * m <= max_diameter + 2 * m; ++m)
        for (std::int64_t d = 1; d < m; ++d) {
            if (2 * d == m) continue;
            for (std::int64_t k = 2 * d < m ? 3 : 4;; ++k) {
                const NathansonParams p{m, d, k};
                if (p.diameter() > max_diameter) break;
                out.push_back(p);
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Base expansion

struct BaseExpansion {
    IntSet set;
    std::int64_t safety_bound = 0;
    /// m was below the bound, so |B +- B| = |A +- A|^k may fail.
    bool below_safety_bound = false;
};

/// Smallest base for which no carry mixes digit positions: 2 k max(A) + 2.
inline std::int64_t base_expansion_bound(const IntSet& a, unsigned k)
{
    return 2 * static_cast<std::int64_t>(k) * a.max() + 2;
}

/// {a_1 + a_2 m + ... + a_k m^(k-1) : a_i in A} for A inside [0, inf).
inline BaseExpansion base_expand(const IntSet& a, unsigned k, std::int64_t m)
{
    detail::require_nonempty(a, "base_expand");
    if (a.min() < 0) throw Error(ErrorKind::parameter, "construct", "base_expand: set must be nonnegative");
    if (k < 1) throw Error(ErrorKind::parameter, "construct", "base_expand: k must be at least 1");
    if (m < 2) throw Error(ErrorKind::parameter, "construct", "base_expand: base must be at least 2");
    BaseExpansion out;
    out.safety_bound = base_expansion_bound(a, k);
    out.below_safety_bound = m < out.safety_bound;
    out.set = a;
    std::int64_t place = 1;
    for (unsigned i = 1; i < k; ++i) {
        place *= m;
        out.set = sumset(out.set, affine(a, place, 0));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Middle insertion A(M; k) = L u O1 u M u O2 u R'

/// The middle window is {n+k, ..., n+k+m-1}; bit i of a window mask stands
/// for n+k+i.
struct MosParams {
    IntSet lower;  // L inside [0, n)
    IntSet upper;  // R inside [n, 2n)
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::int64_t m = 0;
    IntSet middle;  // M

    std::int64_t window_start() const { return n + k; }

    /// Splits a seed A = L u R at n.
    static MosParams from_seed(const IntSet& seed, std::int64_t n, std::int64_t k, std::int64_t m, IntSet middle)
    {
        auto [lower, upper] = fringe_split(seed, n);
        return {std::move(lower), std::move(upper), n, k, m, std::move(middle)};
    }

    void validate_seed() const;
    void validate() const;
};

/// Window condition: for every l in {n+k, ..., n+m} some j in
/// {l-1, ..., l+k-2} belongs to M. In window coordinates t = l - (n+k) this
/// asks for a set bit in [t-1, t+k-2] for each t in [0, m-k].
inline bool middle_gap_ok(std::uint64_t window_mask, std::int64_t k, std::int64_t m)
{
    for (std::int64_t t = 0; t <= m - k; ++t) {
        const std::int64_t lo = std::max<std::int64_t>(0, t - 1);
        const std::int64_t hi = std::min<std::int64_t>(m - 1, t + k - 2);
        if (hi < lo) return false;
        const std::uint64_t span = hi - lo + 1 >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (hi - lo + 1)) - 1;
        if (((window_mask >> lo) & span) == 0) return false;
    }
    return true;
}

inline constexpr std::int64_t max_middle_window = 62;

inline std::uint64_t window_mask_of(const IntSet& middle, std::int64_t start, std::int64_t m)
{
    std::uint64_t mask = 0;
    middle.for_each([&](std::int64_t v) {
        if (v < start || v >= start + m)
            throw Error(ErrorKind::parameter, "construct", "middle element " + std::to_string(v) + " outside its window");
        mask |= std::uint64_t{1} << (v - start);
    });
    return mask;
}

inline void MosParams::validate_seed() const
{
    auto fail = [](const std::string& what) { throw Error(ErrorKind::parameter, "construct", "mos_insert: " + what); };
    if (n < 1) fail("n must be at least 1");
    if (lower.empty() || lower.min() != 0 || lower.max() >= n) fail("L must lie in [0, n) and contain 0");
    if (upper.empty() || upper.min() < n || upper.max() != 2 * n - 1) fail("R must lie in [n, 2n) and contain 2n-1");
    auto elems = lower.elements();
    const auto high = upper.elements();
    elems.insert(elems.end(), high.begin(), high.end());
    const auto seed = IntSet::from_sorted_unique(std::move(elems));
    if (classify(seed).label != Label::sum_dominant) fail("seed L u R is not sum-dominant");
    if (!is_Pn(seed, n)) fail("seed L u R is not a P_n set");
}

inline void MosParams::validate() const
{
    auto fail = [](const std::string& what) { throw Error(ErrorKind::parameter, "construct", "mos_insert: " + what); };
    validate_seed();
    if (k < n) fail("k must be at least n");
    if (m < 0 || m > max_middle_window) fail("m must lie in [0, 62]");
    const std::uint64_t mask = window_mask_of(middle, window_start(), m);
    if (mask & 1u) fail("n+k must not be in M");
    if (!middle_gap_ok(mask, k, m)) fail("M leaves a run of k or more missing elements");
}

inline IntSet mos_insert(const MosParams& p)
{
    p.validate();
    std::vector<std::int64_t> elems = p.lower.elements();
    for (std::int64_t v = p.n; v < p.n + p.k; ++v) elems.push_back(v);
    const auto mid = p.middle.elements();
    elems.insert(elems.end(), mid.begin(), mid.end());
    for (std::int64_t v = p.n + p.k + p.m; v < p.n + 2 * p.k + p.m; ++v) elems.push_back(v);
    p.upper.for_each([&](std::int64_t v) { elems.push_back(v + 2 * p.k + p.m); });
    return IntSet::from_sorted_unique(std::move(elems));
}

/// Calls sink(IntSet) for every admissible middle M in window-mask order,
/// restricted to mask indices [first, last) of the 2^(m-1) candidates (n+k is
/// never in M). Returns how many were admissible. Index ranges let callers
/// shard the stream.
template <class Sink>
std::uint64_t valid_middles(std::int64_t k, std::int64_t m, std::int64_t n, Sink&& sink, std::uint64_t first = 0,
                            std::uint64_t last = ~std::uint64_t{0})
{
    if (k < 1) throw Error(ErrorKind::parameter, "construct", "valid_middles: k must be at least 1");
    if (m < 0 || m > max_middle_window) throw Error(ErrorKind::capacity, "construct", "valid_middles: m above 62");
    const std::int64_t start = n + k;
    if (m == 0) {
        if (first > 0) return 0;
        sink(IntSet{});
        return 1;
    }
    const std::uint64_t total = std::uint64_t{1} << (m - 1);
    last = std::min(last, total);
    std::uint64_t count = 0;
    for (std::uint64_t x = first; x < last; ++x) {
        const std::uint64_t mask = x << 1;
        if (!middle_gap_ok(mask, k, m)) continue;
        ++count;
        sink(IntSet::from_mask(mask, start));
    }
    return count;
}

inline std::uint64_t count_valid_middles(std::int64_t k, std::int64_t m, std::int64_t n = 0)
{
    return valid_middles(k, m, n, [](const IntSet&) {});
}

/// sum_{j=n}^{r/4} 2^(-2j) (1 - 2^(-j/2))^(r / (j/2)), the block-counting
/// lower bound (up to a constant) on the share of {0..r-1} subsets produced
/// by middle insertion.
inline double mos_density_bound(std::int64_t r, std::int64_t n)
{
    if (n < 1 || r < 4 * n) throw Error(ErrorKind::parameter, "construct", "mos_density_bound: needs r >= 4n >= 4");
    double total = 0.0;
    const double rr = static_cast<double>(r);
    for (std::int64_t j = n; j <= r / 4; ++j) {
        const double jj = static_cast<double>(j);
        const double log_term = -2.0 * jj * std::log(2.0) + (rr / (jj / 2.0)) * std::log1p(-std::exp2(-jj / 2.0));
        total += std::exp(log_term);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Ballot sequences

/// Every nonempty prefix has strictly more 1s than 0s and the final excess
/// equals the largest prefix excess.
inline bool is_ballot(std::span<const std::uint8_t> seq)
{
    if (seq.empty()) return false;
    std::int64_t excess = 0;
    std::int64_t best = 0;
    for (auto bit : seq) {
        excess += bit ? 1 : -1;
        if (excess <= 0) return false;
        best = std::max(best, excess);
    }
    return excess == best;
}

inline bool is_bidirectional_ballot(std::span<const std::uint8_t> seq)
{
    if (seq.empty()) throw Error(ErrorKind::parameter, "construct", "ballot sequence must be nonempty");
    if (!is_ballot(seq)) return false;
    std::vector<std::uint8_t> reversed(seq.rbegin(), seq.rend());
    return is_ballot(reversed);
}

/// "11011" -> {1,1,0,1,1}.
inline std::vector<std::uint8_t> parse_bits(std::string_view text)
{
    std::vector<std::uint8_t> out;
    for (char ch : text) {
        if (ch != '0' && ch != '1') throw Error(ErrorKind::parse, "construct", "bit sequence must contain only 0 and 1");
        out.push_back(ch == '1');
    }
    return out;
}

inline bool is_bidirectional_ballot(std::string_view bits) { return is_bidirectional_ballot(parse_bits(bits)); }

/// Number of bidirectional ballot sequences of length m.
///
/// A sequence is bidirectional exactly when its partial excesses satisfy
/// 0 < e_i < e_m for 1 <= i < m, so this counts lattice paths by their final
/// height with a strip-confined dynamic program.
inline std::uint64_t count_bidirectional(unsigned m)
{
    if (m < 1) throw Error(ErrorKind::parameter, "construct", "count_bidirectional: m must be at least 1");
    if (m > 62) throw Error(ErrorKind::capacity, "construct", "count_bidirectional: m above 62 overflows");
    if (m == 1) return 1;
    std::uint64_t total = 0;
    for (unsigned top = 2; top <= m; ++top) {
        if ((m - top) % 2 != 0) continue;
        // heights 1..top-1 after steps 1..m-1; the last step goes top-1 -> top.
        std::vector<std::uint64_t> ways(top + 1, 0);
        ways[1] = 1;
        for (unsigned step = 2; step < m; ++step) {
            std::vector<std::uint64_t> next(top + 1, 0);
            for (unsigned h = 1; h < top; ++h) {
                if (ways[h] == 0) continue;
                if (h + 1 < top) next[h + 1] += ways[h];
                if (h - 1 >= 1) next[h - 1] += ways[h];
            }
            ways.swap(next);
        }
        total += ways[top - 1];
    }
    return total;
}

inline constexpr unsigned max_ballot_enumeration = 30;

/// Calls sink(mask) for every bidirectional ballot sequence of length m,
/// bit i of the mask holding element i, by depth-first search over prefixes.
template <class Sink>
std::uint64_t enumerate_bidirectional(unsigned m, Sink&& sink)
{
    if (m < 1) throw Error(ErrorKind::parameter, "construct", "enumerate_bidirectional: m must be at least 1");
    if (m > max_ballot_enumeration)
        throw Error(ErrorKind::capacity, "construct", "enumerate_bidirectional: m above 30; use count_bidirectional");
    std::uint64_t count = 0;
    // Heights stay positive; the final height must beat every earlier one.
    auto recurse = [&](auto& self, unsigned pos, std::int64_t height, std::int64_t prev_peak,
                       std::uint64_t mask) -> void {
        if (pos == m) {
            if (height > prev_peak) {
                ++count;
                sink(mask);
            }
            return;
        }
        const std::int64_t peak = std::max(prev_peak, height);
        if (height + static_cast<std::int64_t>(m - pos) <= peak) return;
        self(self, pos + 1, height + 1, peak, mask | (std::uint64_t{1} << pos));
        if (height > 1) self(self, pos + 1, height - 1, peak, mask);
    };
    recurse(recurse, 1, 1, 0, 1u);
    return count;
}

}  // namespace mstd
