#pragma once

// Comparisons between linear forms sA - dA of equal length, k-generational
// checks, and the eventual linear growth of |kA|.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "mstd/classify.hpp"
#include "mstd/error.hpp"
#include "mstd/intset.hpp"

namespace mstd {

struct LinComparison {
    LinForm first;
    LinForm second;
    std::size_t first_card = 0;
    std::size_t second_card = 0;

    /// +1 if the first form is larger, -1 if smaller, 0 on a tie.
    int order() const { return first_card > second_card ? 1 : (first_card < second_card ? -1 : 0); }
};

inline LinComparison compare_linforms(const IntSet& a, LinForm f1, LinForm f2)
{
    detail::require_nonempty(a, "compare_linforms");
    if (f1.length() == 0 || f1.length() != f2.length())
        throw Error(ErrorKind::parameter, "genlin",
                    "compare_linforms: forms must have the same positive length s + d");
    LinComparison out{f1.canonical(), f2.canonical()};
    out.first_card = lincomb(a, out.first).size();
    out.second_card = out.first == out.second ? out.first_card : lincomb(a, out.second).size();
    return out;
}

struct Generational {
    bool holds = false;
    /// excess[c - 1] = |cA + cA| - |cA - cA|.
    std::vector<std::int64_t> excess;
};

/// True iff cA is sum-dominant for every 1 <= c <= k.
inline Generational is_k_generational(const IntSet& a, unsigned k)
{
    detail::require_nonempty(a, "is_k_generational");
    if (k == 0) throw Error(ErrorKind::parameter, "genlin", "is_k_generational: k must be at least 1");
    Generational out;
    out.holds = true;
    IntSet level = a;
    for (unsigned c = 1; c <= k; ++c) {
        if (c > 1) level = sumset(level, a);
        const auto e = classify(level).excess;
        out.excess.push_back(e);
        out.holds = out.holds && e > 0;
    }
    return out;
}

/// |kA| = slope * k - constant for every k >= onset, with
/// slope = (max A - min A) / gcd of the differences.
struct StabilizationReport {
    std::int64_t step = 0;  // s, gcd of a - min A
    std::int64_t slope = 0;
    std::int64_t constant = 0;
    unsigned onset = 0;
    unsigned k_max = 0;
    bool stabilized = false;
    /// sizes[k - 1] = |kA|.
    std::vector<std::int64_t> sizes;

    /// Whether the onset respects N <= (a_m - a_1) / s.
    bool onset_within_slope() const { return stabilized && static_cast<std::int64_t>(onset) <= slope; }
};

namespace detail {

// Smallest N with slope*k - sizes[k-1] constant on [N, sizes.size()].
inline unsigned linear_tail_start(const std::vector<std::int64_t>& sizes, std::int64_t slope)
{
    auto residual = [&](std::size_t k) { return slope * static_cast<std::int64_t>(k) - sizes[k - 1]; };
    std::size_t start = sizes.size();
    while (start > 1 && residual(start - 1) == residual(sizes.size())) --start;
    return static_cast<unsigned>(start);
}

}  // namespace detail

/// k_max = 0 picks 3 * slope + 3. The onset only counts once the linear law
/// holds on a verification window of `slope` further steps; k_max is raised
/// (up to 64x) until that window fits, otherwise the report is flagged.
inline StabilizationReport stabilization(const IntSet& a, unsigned k_max = 0)
{
    detail::require_nonempty(a, "stabilization");
    if (a.size() < 2) throw Error(ErrorKind::parameter, "genlin", "stabilization: set needs at least two elements");
    const IntSet base = normalize(a);
    StabilizationReport out;
    out.step = difference_gcd(a);
    out.slope = base.max();
    const auto window = static_cast<unsigned>(out.slope);
    if (k_max == 0) k_max = 3 * window + 3;
    if (k_max < 2) throw Error(ErrorKind::parameter, "genlin", "stabilization: k_max must be at least 2");
    const unsigned limit = 64 * k_max;

    IntSet level = base;
    out.sizes.push_back(static_cast<std::int64_t>(level.size()));
    while (true) {
        while (out.sizes.size() < k_max) {
            level = sumset(level, base);
            out.sizes.push_back(static_cast<std::int64_t>(level.size()));
        }
        const unsigned onset = detail::linear_tail_start(out.sizes, out.slope);
        if (onset + window <= k_max) {
            out.onset = onset;
            out.k_max = k_max;
            out.constant = out.slope * static_cast<std::int64_t>(k_max) - out.sizes.back();
            out.stabilized = true;
            return out;
        }
        if (k_max >= limit) break;
        k_max = std::min(limit, 2 * k_max);
    }
    out.k_max = k_max;
    return out;
}

/// The two fringe shapes L = [0, 2k+1] \ ({2} u [k+2, 2k]) and
/// R = [0, 2k+2] \ ({3} u [k+3, 2k+1]).
inline IntSet left_fringe(unsigned k)
{
    if (k < 2) throw Error(ErrorKind::parameter, "genlin", "fringe shapes need k >= 2");
    const std::int64_t ell = 2 * static_cast<std::int64_t>(k) + 1;
    std::vector<std::int64_t> elems;
    for (std::int64_t v = 0; v <= ell; ++v)
        if (v != 2 && !(v >= ell - k + 1 && v <= ell - 1)) elems.push_back(v);
    return IntSet::from_sorted_unique(std::move(elems));
}

inline IntSet right_fringe(unsigned k)
{
    if (k < 2) throw Error(ErrorKind::parameter, "genlin", "fringe shapes need k >= 2");
    const std::int64_t r = 2 * static_cast<std::int64_t>(k) + 2;
    const std::int64_t kk = k;
    std::vector<std::int64_t> elems;
    for (std::int64_t v = 0; v <= r; ++v)
        if (v != 3 && !(v >= kk + 3 && v <= 2 * kk + 1)) elems.push_back(v);
    return IntSet::from_sorted_unique(std::move(elems));
}

struct FringeReport {
    IntSet combined;  // xL + yR
    std::vector<std::int64_t> expected_missing;
    std::vector<std::int64_t> missing;
    /// Elements in exactly one of the two lists above.
    std::vector<std::int64_t> offending;
    bool holds = false;
};

/// Checks that xL + yR misses exactly the k-1 values just below its maximum
/// and the single value 2k-1 below it, and nothing else in [0, max].
inline FringeReport fringe_structure(unsigned k, unsigned x, unsigned y)
{
    if (x + y == 0) throw Error(ErrorKind::parameter, "genlin", "fringe_structure: x + y must be at least 1");
    const IntSet left = left_fringe(k);
    const IntSet right = right_fringe(k);
    FringeReport out;
    if (x == 0) out.combined = multiple(right, y);
    else if (y == 0) out.combined = multiple(left, x);
    else out.combined = sumset(multiple(left, x), multiple(right, y));

    const std::int64_t top = out.combined.max();
    const std::int64_t kk = k;
    out.expected_missing.push_back(top - (2 * kk - 1));
    for (std::int64_t v = top - (kk - 1); v <= top - 1; ++v) out.expected_missing.push_back(v);
    for (std::int64_t v = 0; v <= top; ++v)
        if (!out.combined.contains(v)) out.missing.push_back(v);

    std::set_symmetric_difference(out.missing.begin(), out.missing.end(), out.expected_missing.begin(),
                                  out.expected_missing.end(), std::back_inserter(out.offending));
    out.holds = out.offending.empty();
    return out;
}

/// For A inside {0, ..., n} and k = s + d, checks
/// |s1 A - d1 A| = kn + 1 - i and |s2 A - d2 A| = kn + 1 - j.
struct TargetCheck {
    LinComparison comparison;
    std::int64_t first_target = 0;
    std::int64_t second_target = 0;
    bool holds = false;
};

inline TargetCheck check_cardinality_targets(const IntSet& a, std::int64_t n, LinForm f1, LinForm f2, std::int64_t i,
                                             std::int64_t j)
{
    if (a.empty() || a.min() < 0 || a.max() > n)
        throw Error(ErrorKind::parameter, "genlin", "check_cardinality_targets: set must lie in {0, ..., n}");
    TargetCheck out{compare_linforms(a, f1, f2)};
    const std::int64_t full = static_cast<std::int64_t>(f1.length()) * n + 1;
    out.first_target = full - i;
    out.second_target = full - j;
    out.holds = static_cast<std::int64_t>(out.comparison.first_card) == out.first_target &&
                static_cast<std::int64_t>(out.comparison.second_card) == out.second_target;
    return out;
}

}  // namespace mstd
