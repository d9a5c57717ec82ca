#pragma once

// Exhaustive searches over subsets of {0, ..., n-1} and over normalized sets
// of bounded diameter. Everything here runs on single-word bitmasks.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mstd/classify.hpp"
#include "mstd/error.hpp"
#include "mstd/intset.hpp"
#include "mstd/mask_kernel.hpp"
#include "mstd/parallel.hpp"
#include "mstd/rng.hpp"

namespace mstd {

inline constexpr unsigned default_enumeration_capacity = 28;

/// Exact label tallies over every subset of {0, ..., n-1} (or every subset
/// containing 0 when fix_zero is set). The empty set is tallied on its own;
/// singletons count as balanced and are also reported as `degenerate`.
struct DensityRecord {
    unsigned n = 0;
    bool fix_zero = true;
    std::uint64_t universe = 0;
    std::uint64_t sum_dominant = 0;
    std::uint64_t balanced = 0;
    std::uint64_t difference_dominated = 0;
    std::uint64_t empty = 0;
    std::uint64_t degenerate = 0;

    double density() const { return universe == 0 ? 0.0 : static_cast<double>(sum_dominant) / static_cast<double>(universe); }

    DensityRecord& operator+=(const DensityRecord& o)
    {
        universe += o.universe;
        sum_dominant += o.sum_dominant;
        balanced += o.balanced;
        difference_dominated += o.difference_dominated;
        empty += o.empty;
        degenerate += o.degenerate;
        return *this;
    }

    friend bool operator==(const DensityRecord&, const DensityRecord&) = default;
};

struct EnumerationOptions {
    unsigned workers = 1;
    unsigned capacity = default_enumeration_capacity;
    /// log2 of the shard count; 0 picks one from the worker count.
    unsigned shard_bits = 0;
};

namespace detail {

inline void check_enumeration_capacity(unsigned n, unsigned capacity)
{
    if (n == 0) throw Error(ErrorKind::parameter, "search", "n must be at least 1");
    if (n > capacity || n > 63)
        throw Error(ErrorKind::capacity, "search",
                    "n = " + std::to_string(n) + " exceeds the exhaustive capacity of " + std::to_string(capacity) +
                        "; use Monte Carlo sampling instead");
}

// Subsets are indexed by their free bits: with fix_zero, mask = 1 | index << 1.
inline std::uint64_t subset_mask(std::uint64_t index, bool fix_zero)
{
    return fix_zero ? (index << 1) | 1u : index;
}

inline void tally(DensityRecord& rec, std::uint64_t mask)
{
    ++rec.universe;
    if (mask == 0) {
        ++rec.empty;
        return;
    }
    if ((mask & (mask - 1)) == 0) {
        ++rec.degenerate;
        ++rec.balanced;
        return;
    }
    const auto c = mask_counts(mask);
    if (c.sum_card > c.diff_card) ++rec.sum_dominant;
    else if (c.sum_card < c.diff_card) ++rec.difference_dominated;
    else ++rec.balanced;
}

inline unsigned shard_bits_for(unsigned free_bits, unsigned workers, unsigned requested)
{
    unsigned h = requested;
    if (h == 0) {
        const unsigned target = std::max(1u, workers) * 16;
        while ((1u << h) < target) ++h;
    }
    return std::min(h, free_bits);
}

}  // namespace detail

inline DensityRecord enumerate_density(unsigned n, bool fix_zero, const EnumerationOptions& opts = {})
{
    detail::check_enumeration_capacity(n, opts.capacity);
    const unsigned free_bits = fix_zero ? n - 1 : n;
    const unsigned h = detail::shard_bits_for(free_bits, opts.workers, opts.shard_bits);
    const std::size_t shards = std::size_t{1} << h;
    const unsigned low_bits = free_bits - h;

    std::vector<DensityRecord> partial(shards);
    parallel_for(shards, opts.workers, [&](std::size_t shard) {
        DensityRecord rec;
        const std::uint64_t base = static_cast<std::uint64_t>(shard) << low_bits;
        const std::uint64_t count = std::uint64_t{1} << low_bits;
        for (std::uint64_t i = 0; i < count; ++i) detail::tally(rec, detail::subset_mask(base | i, fix_zero));
        partial[shard] = rec;
    });

    DensityRecord total;
    for (const auto& rec : partial) total += rec;
    total.n = n;
    total.fix_zero = fix_zero;
    return total;
}

/// Calls sink(IntSet) for every sum-dominant subset, in increasing bitmask order.
template <class Sink>
void enumerate_mstd(unsigned n, bool fix_zero, Sink&& sink, unsigned capacity = default_enumeration_capacity)
{
    detail::check_enumeration_capacity(n, capacity);
    const unsigned free_bits = fix_zero ? n - 1 : n;
    const std::uint64_t count = std::uint64_t{1} << free_bits;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t mask = detail::subset_mask(i, fix_zero);
        if ((mask & (mask - 1)) == 0) continue;
        if (mask_counts(mask).excess() > 0) sink(IntSet::from_mask(mask));
    }
}

inline std::vector<IntSet> find_mstd_sets(unsigned n, bool fix_zero, unsigned capacity = default_enumeration_capacity)
{
    std::vector<IntSet> out;
    enumerate_mstd(n, fix_zero, [&](IntSet s) { out.push_back(std::move(s)); }, capacity);
    return out;
}

inline constexpr unsigned max_search_diameter = 32;
inline constexpr double default_search_budget = 1e10;

namespace detail {

inline double binomial(unsigned n, unsigned k)
{
    if (k > n) return 0.0;
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// Visits masks with bits 0 and d set plus exactly `inner` bits strictly
// between them, diameters ascending and masks ascending within a diameter.
// The visitor returns true to stop.
template <class Visit>
bool visit_normalized(unsigned size, unsigned max_diameter, Visit&& visit)
{
    const unsigned inner = size - 2;
    for (unsigned d = 1; d <= max_diameter; ++d) {
        const unsigned slots = d - 1;
        if (inner > slots) continue;
        const std::uint64_t ends = (std::uint64_t{1} << d) | 1u;
        if (inner == 0) {
            if (visit(ends)) return true;
            continue;
        }
        const std::uint64_t limit = std::uint64_t{1} << slots;
        // Gosper's hack over the interior slots.
        for (std::uint64_t x = (std::uint64_t{1} << inner) - 1; x < limit;) {
            if (visit(ends | (x << 1))) return true;
            const std::uint64_t c = x & (~x + 1);
            const std::uint64_t r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
    }
    return false;
}

inline void check_min_size_args(unsigned size, unsigned max_diameter, double budget)
{
    if (size < 3) throw Error(ErrorKind::parameter, "search", "search_min_size: size must be at least 3");
    if (max_diameter > max_search_diameter)
        throw Error(ErrorKind::capacity, "search", "search_min_size: max_diameter above 32");
    double work = 0.0;
    for (unsigned d = 1; d <= max_diameter; ++d) work += binomial(d - 1, size - 2);
    if (work > budget)
        throw Error(ErrorKind::capacity, "search",
                    "search_min_size: " + std::to_string(work) + " candidate sets exceed the budget");
}

}  // namespace detail

/// First sum-dominant set of exactly `size` elements with min 0 and diameter
/// at most max_diameter; diameters are scanned in increasing order.
inline std::optional<IntSet> search_min_size(unsigned size, unsigned max_diameter,
                                             double budget = default_search_budget)
{
    detail::check_min_size_args(size, max_diameter, budget);
    std::optional<IntSet> found;
    detail::visit_normalized(size, max_diameter, [&](std::uint64_t mask) {
        if (mask_counts(mask).excess() <= 0) return false;
        found = IntSet::from_mask(mask);
        return true;
    });
    return found;
}

/// Every sum-dominant set the search above would consider.
inline std::vector<IntSet> find_all_min_size(unsigned size, unsigned max_diameter,
                                             double budget = default_search_budget)
{
    detail::check_min_size_args(size, max_diameter, budget);
    std::vector<IntSet> found;
    detail::visit_normalized(size, max_diameter, [&](std::uint64_t mask) {
        if (mask_counts(mask).excess() > 0) found.push_back(IntSet::from_mask(mask));
        return false;
    });
    return found;
}

struct ExcessSearchOptions {
    std::uint64_t seed = 1;
    /// Random draws used when max_diameter is beyond the exhaustive range.
    std::uint64_t trials = 1'000'000;
};

/// A set with |A+A| - |A-A| = target inside {0, ..., max_diameter}. Up to
/// diameter 32 the scan is exhaustive (diameters ascending, then masks), so
/// a nullopt is a proof of absence; beyond that it is a seeded random search.
inline std::optional<IntSet> search_excess(std::int64_t target, unsigned max_diameter,
                                           const ExcessSearchOptions& opts = {})
{
    if (max_diameter <= max_search_diameter) {
        if (target == 0) return IntSet{0};
        for (unsigned d = 1; d <= max_diameter; ++d) {
            const std::uint64_t ends = (std::uint64_t{1} << d) | 1u;
            const std::uint64_t count = std::uint64_t{1} << (d - 1);
            for (std::uint64_t x = 0; x < count; ++x) {
                const std::uint64_t mask = ends | (x << 1);
                if (mask_counts(mask).excess() == target) return IntSet::from_mask(mask);
            }
        }
        return std::nullopt;
    }
    for (std::uint64_t t = 0; t < opts.trials; ++t) {
        auto engine = trial_engine(opts.seed, t);
        std::vector<std::int64_t> elems{0};
        for (unsigned i = 1; i < max_diameter; ++i)
            if (engine() >> 63) elems.push_back(i);
        elems.push_back(max_diameter);
        IntSet a = IntSet::from_sorted_unique(std::move(elems));
        if (classify(a).excess == target) return a;
    }
    return std::nullopt;
}

}  // namespace mstd
