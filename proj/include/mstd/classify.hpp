#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "mstd/error.hpp"
#include "mstd/intset.hpp"
#include "mstd/mask_kernel.hpp"

namespace mstd {

enum class Label { sum_dominant, balanced, difference_dominated };

inline std::string_view to_string(Label label)
{
    switch (label) {
    case Label::sum_dominant: return "sum_dominant";
    case Label::balanced: return "balanced";
    case Label::difference_dominated: return "difference_dominated";
    }
    return "unknown";
}

inline Label label_for_excess(std::int64_t excess)
{
    if (excess > 0) return Label::sum_dominant;
    if (excess < 0) return Label::difference_dominated;
    return Label::balanced;
}

struct Classification {
    std::size_t sum_card = 0;
    std::size_t diff_card = 0;
    std::int64_t excess = 0;
    Label label = Label::balanced;
};

inline Classification classify(const IntSet& a)
{
    detail::require_nonempty(a, "classify");
    Classification c;
    if (!a.is_sparse() && a.width() <= 64) {
        const auto counts = mask_counts(a.dense_words().front());
        c.sum_card = static_cast<std::size_t>(counts.sum_card);
        c.diff_card = static_cast<std::size_t>(counts.diff_card);
    } else {
        c.sum_card = sumset(a, a).size();
        c.diff_card = diffset(a, a).size();
    }
    c.excess = static_cast<std::int64_t>(c.sum_card) - static_cast<std::int64_t>(c.diff_card);
    c.label = label_for_excess(c.excess);
    return c;
}

/// |A+A| - |A-A|.
inline std::int64_t excess(const IntSet& a) { return classify(a).excess; }

/// The reflection constant a* with A = a* - A, when one exists. a* is twice
/// the center of symmetry, so it stays integral for even-sized sets.
inline std::optional<std::int64_t> is_symmetric(const IntSet& a)
{
    detail::require_nonempty(a, "is_symmetric");
    const std::int64_t reflect = a.min() + a.max();
    bool ok = true;
    a.for_each([&](std::int64_t v) { ok = ok && a.contains(reflect - v); });
    if (!ok) return std::nullopt;
    return reflect;
}

namespace detail {

inline bool covers(const IntSet& s, std::int64_t lo, std::int64_t hi)
{
    for (std::int64_t v = lo; v <= hi; ++v)
        if (!s.contains(v)) return false;
    return true;
}

}  // namespace detail

/// P_n property: the sumset and difference set (order 2) or the 4-fold forms
/// A+A+A+A and A+A-A-A (order 4) contain every possible element except the
/// first and last n. An empty required range holds vacuously.
inline bool is_Pn(const IntSet& a, std::int64_t n, int order = 2)
{
    detail::require_nonempty(a, "is_Pn");
    if (n < 0) throw Error(ErrorKind::parameter, "classify", "is_Pn: n must be nonnegative");
    if (order != 2 && order != 4) throw Error(ErrorKind::parameter, "classify", "is_Pn: order must be 2 or 4");
    const std::int64_t lo = a.min();
    const std::int64_t hi = a.max();
    const std::int64_t half = order / 2;
    const IntSet sums = lincomb(a, LinForm{static_cast<unsigned>(order), 0});
    const IntSet diffs = lincomb(a, LinForm{static_cast<unsigned>(half), static_cast<unsigned>(half)});
    const std::int64_t span = half * (hi - lo);
    return detail::covers(sums, order * lo + n, order * hi - n) && detail::covers(diffs, -span + n, span - n);
}

struct MissingCounts {
    std::int64_t sums = 0;
    std::int64_t diffs = 0;

    friend bool operator==(const MissingCounts&, const MissingCounts&) = default;
};

/// Sums and differences absent relative to the 2n - 1 possible values of each
/// for A inside {0, ..., n - 1}.
inline MissingCounts missing_counts(const IntSet& a, std::int64_t ambient_n)
{
    detail::require_nonempty(a, "missing_counts");
    if (a.min() < 0 || a.max() >= ambient_n)
        throw Error(ErrorKind::range, "classify", "missing_counts: set does not fit in {0, ..., n-1}");
    const auto c = classify(a);
    const std::int64_t possible = 2 * ambient_n - 1;
    return {possible - static_cast<std::int64_t>(c.sum_card), possible - static_cast<std::int64_t>(c.diff_card)};
}

/// L = A with elements below ell, U = the rest.
inline std::pair<IntSet, IntSet> fringe_split(const IntSet& a, std::int64_t ell)
{
    std::vector<std::int64_t> lower;
    std::vector<std::int64_t> upper;
    a.for_each([&](std::int64_t v) { (v < ell ? lower : upper).push_back(v); });
    return {IntSet::from_sorted_unique(std::move(lower)), IntSet::from_sorted_unique(std::move(upper))};
}

}  // namespace mstd
