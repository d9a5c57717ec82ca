#pragma once

// Finite integer sets and the additive operations on them.
//
// An IntSet is stored in one of two layouts. The dense layout is a bit vector
// anchored at the minimum (bit i set <=> min + i is a member); the sparse
// layout is a sorted element list used when fewer than one slot in 64 is
// occupied. The layout is a pure function of (size, diameter), so two equal
// sets always share a layout and equality can compare storage directly.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mstd/error.hpp"

namespace mstd {

namespace detail {

inline constexpr std::size_t word_bits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

// dst |= src << shift. dst must hold at least words_for(src_bits + shift).
inline void or_shifted(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
                       std::size_t shift)
{
    const std::size_t q = shift / word_bits;
    const unsigned r = static_cast<unsigned>(shift % word_bits);
    const std::size_t n = src.size();
    if (n == 0) return;
    if (r == 0) {
        std::uint64_t* out = dst.data() + q;
        for (std::size_t i = 0; i < n; ++i) out[i] |= src[i];
        return;
    }
    std::uint64_t* out = dst.data() + q;
    out[0] |= src[0] << r;
    for (std::size_t i = 1; i < n; ++i) out[i] |= (src[i] << r) | (src[i - 1] >> (word_bits - r));
    if (q + n < dst.size()) out[n] |= src[n - 1] >> (word_bits - r);
}

template <class F>
void for_each_bit(std::span<const std::uint64_t> words, F&& f)
{
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            f(w * word_bits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
}

}  // namespace detail

class IntSet {
public:
    using value_type = std::int64_t;

    IntSet() = default;

    IntSet(std::initializer_list<value_type> elems) : IntSet(std::vector<value_type>(elems)) {}

    /// Duplicates are merged; order does not matter.
    explicit IntSet(std::vector<value_type> elems)
    {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        assign_sorted(std::move(elems));
    }

    static IntSet from_sorted_unique(std::vector<value_type> elems)
    {
        IntSet s;
        s.assign_sorted(std::move(elems));
        return s;
    }

    /// {lo, ..., hi}; empty when hi < lo.
    static IntSet interval(value_type lo, value_type hi)
    {
        if (hi < lo) return {};
        const auto width = static_cast<std::size_t>(hi - lo + 1);
        std::vector<std::uint64_t> words(detail::words_for(width), ~std::uint64_t{0});
        if (const auto tail = width % detail::word_bits; tail != 0)
            words.back() = (std::uint64_t{1} << tail) - 1;
        return from_bits(lo, std::move(words));
    }

    /// Bit i of mask set <=> offset + i is a member.
    static IntSet from_mask(std::uint64_t mask, value_type offset = 0)
    {
        return from_bits(offset, std::vector<std::uint64_t>{mask});
    }

    /// Bit i of words set <=> offset + i is a member. Leading and trailing
    /// zero slots are trimmed.
    static IntSet from_bits(value_type offset, std::vector<std::uint64_t> words)
    {
        IntSet s;
        s.adopt_bits(offset, std::move(words));
        return s;
    }

    bool empty() const noexcept { return size_ == 0; }
    std::size_t size() const noexcept { return size_; }
    value_type min() const noexcept { return min_; }
    value_type max() const noexcept { return min_ + static_cast<value_type>(width_) - 1; }
    value_type diameter() const noexcept { return empty() ? 0 : max() - min(); }
    /// Number of slots between min and max inclusive.
    std::size_t width() const noexcept { return width_; }
    bool is_sparse() const noexcept { return sparse_; }

    bool contains(value_type v) const
    {
        if (empty() || v < min_ || v > max()) return false;
        if (sparse_) return std::binary_search(elems_.begin(), elems_.end(), v);
        const auto i = static_cast<std::size_t>(v - min_);
        return (words_[i / detail::word_bits] >> (i % detail::word_bits)) & 1u;
    }

    template <class F>
    void for_each(F&& f) const
    {
        if (sparse_) {
            for (auto v : elems_) f(v);
        } else {
            detail::for_each_bit(words_, [&](std::size_t i) { f(min_ + static_cast<value_type>(i)); });
        }
    }

    std::vector<value_type> elements() const
    {
        if (sparse_) return elems_;
        std::vector<value_type> out;
        out.reserve(size_);
        for_each([&](value_type v) { out.push_back(v); });
        return out;
    }

    /// Dense bit words anchored at min(); materialized for sparse sets.
    std::vector<std::uint64_t> dense_words() const
    {
        if (!sparse_) return words_;
        std::vector<std::uint64_t> words(detail::words_for(width_), 0);
        for (auto v : elems_) {
            const auto i = static_cast<std::size_t>(v - min_);
            words[i / detail::word_bits] |= std::uint64_t{1} << (i % detail::word_bits);
        }
        return words;
    }

    IntSet shifted(value_type delta) const
    {
        IntSet s = *this;
        if (empty()) return s;
        s.min_ += delta;
        for (auto& v : s.elems_) v += delta;
        return s;
    }

    IntSet negated() const
    {
        if (empty()) return {};
        std::vector<value_type> out;
        out.reserve(size_);
        const auto hi = max();
        if (sparse_) {
            for (auto it = elems_.rbegin(); it != elems_.rend(); ++it) out.push_back(-*it);
            return from_sorted_unique(std::move(out));
        }
        std::vector<std::uint64_t> words(words_.size(), 0);
        detail::for_each_bit(words_, [&](std::size_t i) {
            const std::size_t j = width_ - 1 - i;
            words[j / detail::word_bits] |= std::uint64_t{1} << (j % detail::word_bits);
        });
        return from_bits(-hi, std::move(words));
    }

    friend bool operator==(const IntSet& a, const IntSet& b)
    {
        if (a.size_ != b.size_) return false;
        if (a.empty()) return true;
        if (a.min_ != b.min_ || a.width_ != b.width_) return false;
        return a.sparse_ ? a.elems_ == b.elems_ : a.words_ == b.words_;
    }

private:
    // One occupied slot in 64 or more keeps the bit-vector layout.
    static bool prefers_sparse(std::size_t size, std::size_t width)
    {
        return size * detail::word_bits < width;
    }

    void assign_sorted(std::vector<value_type> elems)
    {
        *this = IntSet{};
        if (elems.empty()) return;
        size_ = elems.size();
        min_ = elems.front();
        width_ = static_cast<std::size_t>(elems.back() - elems.front()) + 1;
        if (prefers_sparse(size_, width_)) {
            sparse_ = true;
            elems_ = std::move(elems);
            return;
        }
        words_.assign(detail::words_for(width_), 0);
        for (auto v : elems) {
            const auto i = static_cast<std::size_t>(v - min_);
            words_[i / detail::word_bits] |= std::uint64_t{1} << (i % detail::word_bits);
        }
    }

    void adopt_bits(value_type offset, std::vector<std::uint64_t> words)
    {
        *this = IntSet{};
        std::size_t lo_word = 0;
        while (lo_word < words.size() && words[lo_word] == 0) ++lo_word;
        if (lo_word == words.size()) return;
        std::size_t hi_word = words.size() - 1;
        while (words[hi_word] == 0) --hi_word;
        const std::size_t lo_bit =
            lo_word * detail::word_bits + static_cast<std::size_t>(std::countr_zero(words[lo_word]));
        const std::size_t hi_bit = hi_word * detail::word_bits + detail::word_bits - 1 -
                                   static_cast<std::size_t>(std::countl_zero(words[hi_word]));
        std::size_t count = 0;
        for (std::size_t w = lo_word; w <= hi_word; ++w) count += static_cast<std::size_t>(std::popcount(words[w]));

        size_ = count;
        min_ = offset + static_cast<value_type>(lo_bit);
        width_ = hi_bit - lo_bit + 1;
        if (prefers_sparse(size_, width_)) {
            sparse_ = true;
            elems_.reserve(size_);
            detail::for_each_bit(std::span<const std::uint64_t>(words).subspan(0, hi_word + 1),
                                 [&](std::size_t i) { elems_.push_back(offset + static_cast<value_type>(i)); });
            return;
        }
        if (lo_bit == 0) {
            words.resize(detail::words_for(width_));
            words_ = std::move(words);
            return;
        }
        // Re-anchor at the lowest set bit.
        std::vector<std::uint64_t> out(detail::words_for(width_), 0);
        const std::size_t q = lo_bit / detail::word_bits;
        const unsigned r = static_cast<unsigned>(lo_bit % detail::word_bits);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::size_t src = i + q;
            std::uint64_t v = src < words.size() ? words[src] >> r : 0;
            if (r != 0 && src + 1 < words.size()) v |= words[src + 1] << (detail::word_bits - r);
            out[i] = v;
        }
        if (const auto tail = width_ % detail::word_bits; tail != 0)
            out.back() &= (std::uint64_t{1} << tail) - 1;
        words_ = std::move(out);
    }

    value_type min_ = 0;
    std::size_t width_ = 0;
    std::size_t size_ = 0;
    bool sparse_ = false;
    std::vector<std::uint64_t> words_;
    std::vector<value_type> elems_;
};

/// s plus-copies and d minus-copies of a set: sA - dA.
struct LinForm {
    unsigned s = 1;
    unsigned d = 0;

    unsigned length() const noexcept { return s + d; }
    /// sA - dA and dA - sA have equal cardinality; the canonical form has s >= d.
    LinForm canonical() const noexcept { return s >= d ? *this : LinForm{d, s}; }
    friend bool operator==(const LinForm&, const LinForm&) = default;
};

namespace detail {

inline void require_nonempty(const IntSet& a, const char* op)
{
    if (a.empty()) throw Error(ErrorKind::empty_set, "intset", std::string(op) + ": empty input set");
}

}  // namespace detail

/// {a + b : a in A, b in B}.
inline IntSet sumset(const IntSet& a, const IntSet& b)
{
    detail::require_nonempty(a, "sumset");
    detail::require_nonempty(b, "sumset");
    const IntSet& small = a.size() <= b.size() ? a : b;
    const IntSet& large = a.size() <= b.size() ? b : a;

    const std::size_t out_width = a.width() + b.width() - 1;
    const double pair_cost = 4.0 * static_cast<double>(a.size()) * static_cast<double>(b.size());
    const double dense_cost =
        static_cast<double>(small.size()) * static_cast<double>(detail::words_for(out_width) + 1) +
        static_cast<double>(detail::words_for(out_width));

    if (pair_cost < dense_cost) {
        std::vector<IntSet::value_type> sums;
        sums.reserve(a.size() * b.size());
        a.for_each([&](IntSet::value_type x) { b.for_each([&](IntSet::value_type y) { sums.push_back(x + y); }); });
        std::sort(sums.begin(), sums.end());
        sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
        return IntSet::from_sorted_unique(std::move(sums));
    }

    const auto src = large.dense_words();
    std::vector<std::uint64_t> out(detail::words_for(out_width) + 1, 0);
    small.for_each([&](IntSet::value_type v) {
        detail::or_shifted(out, src, static_cast<std::size_t>(v - small.min()));
    });
    return IntSet::from_bits(a.min() + b.min(), std::move(out));
}

/// {a - b : a in A, b in B}.
inline IntSet diffset(const IntSet& a, const IntSet& b)
{
    detail::require_nonempty(a, "diffset");
    detail::require_nonempty(b, "diffset");
    return sumset(a, b.negated());
}

/// k-fold sumset A + ... + A; k = 0 gives {0}.
inline IntSet multiple(const IntSet& a, unsigned k)
{
    detail::require_nonempty(a, "multiple");
    if (k == 0) return IntSet{0};
    IntSet acc = a;
    for (unsigned i = 1; i < k; ++i) acc = sumset(acc, a);
    return acc;
}

/// sA - dA.
inline IntSet lincomb(const IntSet& a, LinForm f)
{
    detail::require_nonempty(a, "lincomb");
    if (f.length() == 0) throw Error(ErrorKind::parameter, "intset", "lincomb: linear form needs s + d >= 1");
    if (f.d == 0) return multiple(a, f.s);
    const IntSet minus = multiple(a, f.d).negated();
    if (f.s == 0) return minus;
    return sumset(multiple(a, f.s), minus);
}

/// {alpha * a + beta : a in A}.
inline IntSet affine(const IntSet& a, IntSet::value_type alpha, IntSet::value_type beta)
{
    if (alpha == 0) throw Error(ErrorKind::invalid_scale, "intset", "affine: scale factor must be nonzero");
    std::vector<IntSet::value_type> out;
    out.reserve(a.size());
    a.for_each([&](IntSet::value_type v) { out.push_back(alpha * v + beta); });
    if (alpha < 0) std::reverse(out.begin(), out.end());
    return IntSet::from_sorted_unique(std::move(out));
}

/// Shift the minimum to 0 and divide by the gcd of the gaps.
inline IntSet normalize(const IntSet& a)
{
    detail::require_nonempty(a, "normalize");
    std::vector<IntSet::value_type> out;
    out.reserve(a.size());
    IntSet::value_type g = 0;
    a.for_each([&](IntSet::value_type v) {
        out.push_back(v - a.min());
        g = std::gcd(g, v - a.min());
    });
    if (g > 1)
        for (auto& v : out) v /= g;
    return IntSet::from_sorted_unique(std::move(out));
}

/// gcd of all differences a - min(A); 0 for a singleton.
inline IntSet::value_type difference_gcd(const IntSet& a)
{
    IntSet::value_type g = 0;
    a.for_each([&](IntSet::value_type v) { g = std::gcd(g, v - a.min()); });
    return g;
}

enum class RepMode { sum, diff };

// Sums default to unordered pairs {x, y} with x <= y; differences are always
// ordered pairs (x, y) with x - y = v.
enum class PairOrder { unordered, ordered };

inline std::size_t rep_count(const IntSet& a, RepMode mode, IntSet::value_type v,
                             PairOrder order = PairOrder::unordered)
{
    detail::require_nonempty(a, "rep_count");
    std::size_t count = 0;
    if (mode == RepMode::diff) {
        a.for_each([&](IntSet::value_type y) { count += a.contains(y + v) ? 1 : 0; });
        return count;
    }
    a.for_each([&](IntSet::value_type x) {
        if (order == PairOrder::unordered && 2 * x > v) return;
        count += a.contains(v - x) ? 1 : 0;
    });
    return count;
}

/// "0,2,3,4".
inline std::string to_string(const IntSet& a)
{
    std::string out;
    bool first = true;
    a.for_each([&](IntSet::value_type v) {
        if (!first) out += ',';
        out += std::to_string(v);
        first = false;
    });
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const IntSet& a) { return os << '{' << to_string(a) << '}'; }

/// Parses comma-separated integers. Surrounding whitespace and braces are
/// tolerated; duplicates and empty input are rejected.
inline IntSet parse_intset(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '{')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '}' || s.back() == '\n'))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw Error(ErrorKind::parse, "intset", "set literal is empty");

    std::vector<IntSet::value_type> elems;
    while (true) {
        const auto comma = text.find(',');
        const auto token = trim(text.substr(0, comma));
        IntSet::value_type v{};
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
            throw Error(ErrorKind::parse, "intset", "bad integer '" + std::string(token) + "' in set literal");
        elems.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw Error(ErrorKind::parse, "intset", "duplicate element in set literal");
    return IntSet::from_sorted_unique(std::move(elems));
}

}  // namespace mstd
