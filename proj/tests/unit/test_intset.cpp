#include <gtest/gtest.h>

#include <random>

#include "mstd/intset.hpp"
#include "oracle.hpp"

using namespace mstd;

namespace {

const IntSet conway{0, 2, 3, 4, 7, 11, 12, 14};

oracle::Set as_set(const IntSet& a)
{
    const auto e = a.elements();
    return {e.begin(), e.end()};
}

IntSet from_set(const oracle::Set& s) { return IntSet(std::vector<std::int64_t>(s.begin(), s.end())); }

}  // namespace

TEST(IntSet, ConstructionSortsAndDeduplicates)
{
    const IntSet a{7, 3, 3, -2, 7};
    EXPECT_EQ(a.elements(), (std::vector<std::int64_t>{-2, 3, 7}));
    EXPECT_EQ(a.min(), -2);
    EXPECT_EQ(a.max(), 7);
    EXPECT_EQ(a.diameter(), 9);
    EXPECT_TRUE(a.contains(3));
    EXPECT_FALSE(a.contains(4));
    EXPECT_FALSE(a.contains(100));
}

TEST(IntSet, EqualityIgnoresLayout)
{
    EXPECT_EQ(IntSet::from_mask(0b1011, 5), (IntSet{5, 6, 8}));
    EXPECT_EQ(IntSet::from_bits(-64, {0, 0b101}), (IntSet{0, 2}));
    EXPECT_EQ(IntSet::interval(3, 6), (IntSet{3, 4, 5, 6}));
    EXPECT_NE((IntSet{0, 1}), (IntSet{0, 2}));
    EXPECT_TRUE(IntSet{}.empty());
}

TEST(IntSet, SparseLayoutRoundTrips)
{
    const IntSet a{0, 1000, 5000, 1'000'000};
    EXPECT_TRUE(a.is_sparse());
    EXPECT_EQ(a.size(), 4u);
    EXPECT_TRUE(a.contains(5000));
    EXPECT_EQ(a.shifted(-1000), (IntSet{-1000, 0, 4000, 999'000}));
    EXPECT_EQ(a.negated().max(), 0);
}

TEST(Sumset, IntervalDoubles)
{
    for (std::int64_t n : {0, 1, 5, 63, 64, 130}) {
        const auto s = sumset(IntSet::interval(0, n), IntSet::interval(0, n));
        EXPECT_EQ(s, IntSet::interval(0, 2 * n));
        EXPECT_EQ(s.size(), static_cast<std::size_t>(2 * n + 1));
    }
    EXPECT_EQ(sumset(IntSet{0}, IntSet{0}), IntSet{0});
}

TEST(Sumset, ConwayCardinalities)
{
    EXPECT_EQ(sumset(conway, conway).size(), 26u);
    EXPECT_EQ(diffset(conway, conway).size(), 25u);
    EXPECT_EQ(lincomb(conway, {1, 1}).size(), 25u);
    const auto b = affine(conway, 3, -7);
    EXPECT_EQ(sumset(b, b).size(), 26u);
}

TEST(Sumset, IntervalDifference)
{
    EXPECT_EQ(diffset(IntSet::interval(0, 9), IntSet::interval(0, 9)), IntSet::interval(-9, 9));
    EXPECT_EQ(diffset(IntSet{5}, IntSet{5}), IntSet{0});
}

TEST(Sumset, EmptyInputThrows)
{
    EXPECT_THROW(sumset(IntSet{}, conway), Error);
    EXPECT_THROW(diffset(conway, IntSet{}), Error);
    try {
        sumset(IntSet{}, IntSet{});
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::empty_set);
        EXPECT_EQ(e.module(), "intset");
    }
}

TEST(Sumset, MatchesPairLoopOnRandomSets)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> lo(-300, 300);
    std::uniform_real_distribution<double> dens(0.002, 0.9);
    for (int trial = 0; trial < 300; ++trial) {
        const auto l1 = lo(rng), l2 = lo(rng);
        const auto a = oracle::random_set(rng, l1, l1 + 400 * (trial % 4) + 3, dens(rng));
        const auto b = oracle::random_set(rng, l2, l2 + 90, dens(rng));
        const auto ia = from_set(a), ib = from_set(b);
        ASSERT_EQ(as_set(sumset(ia, ib)), oracle::sums(a, b)) << "trial " << trial;
        ASSERT_EQ(as_set(diffset(ia, ib)), oracle::diffs(a, b)) << "trial " << trial;
    }
}

TEST(Sumset, CardinalityBounds)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = from_set(oracle::random_set(rng, 0, 40, 0.3));
        const auto k = a.size();
        const auto s = sumset(a, a).size();
        const auto d = diffset(a, a).size();
        EXPECT_GE(s, 2 * k - 1);
        EXPECT_LE(s, k * (k + 1) / 2);
        EXPECT_GE(d, 2 * k - 1);
        EXPECT_LE(d, k * (k - 1) + 1);
        const auto dd = diffset(a, a);
        EXPECT_TRUE(dd.contains(0));
        EXPECT_EQ(dd, dd.negated());
    }
}

TEST(Lincomb, Forms)
{
    EXPECT_EQ(lincomb(IntSet{0, 1}, {2, 0}), (IntSet{0, 1, 2}));
    EXPECT_EQ(lincomb(conway, {1, 0}), conway);
    EXPECT_EQ(lincomb(conway, {2, 0}), sumset(conway, conway));
    EXPECT_EQ(multiple(conway, 0), IntSet{0});
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = oracle::random_set(rng, -5, 15, 0.4);
        const auto ia = from_set(a);
        for (unsigned s = 0; s <= 3; ++s)
            for (unsigned d = 0; d <= 3; ++d) {
                if (s + d == 0) continue;
                ASSERT_EQ(as_set(lincomb(ia, {s, d})), oracle::form(a, s, d));
                EXPECT_EQ(lincomb(ia, {d, s}), lincomb(ia, {s, d}).negated());
            }
    }
}

TEST(Affine, MapsAndPreservesCardinalities)
{
    EXPECT_EQ(affine(IntSet{0, 2, 3}, 1, 0), (IntSet{0, 2, 3}));
    EXPECT_EQ(affine(IntSet{0, 1, 2}, 2, 5), (IntSet{5, 7, 9}));
    EXPECT_EQ(affine(IntSet{0, 1, 2}, -1, 0), (IntSet{-2, -1, 0}));
    EXPECT_THROW(affine(conway, 0, 1), Error);

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> alpha(-4, 4), beta(-50, 50);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = from_set(oracle::random_set(rng, 0, 30, 0.35));
        std::int64_t al = 0;
        while (al == 0) al = alpha(rng);
        const auto b = affine(a, al, beta(rng));
        EXPECT_EQ(b.size(), a.size());
        EXPECT_EQ(sumset(b, b).size(), sumset(a, a).size());
        EXPECT_EQ(diffset(b, b).size(), diffset(a, a).size());
    }
}

TEST(Normalize, CanonicalForm)
{
    EXPECT_EQ(normalize(IntSet{5, 7, 9}), (IntSet{0, 1, 2}));
    EXPECT_EQ(normalize(IntSet{0}), IntSet{0});
    EXPECT_EQ(normalize(IntSet{-3}), IntSet{0});
    EXPECT_EQ(difference_gcd(IntSet{4, 10, 16}), 6);

    std::mt19937_64 rng(23);
    const std::int64_t alphas[] = {-3, -2, -1, 1, 2, 3};
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = from_set(oracle::random_set(rng, -10, 25, 0.3));
        const auto n = normalize(a);
        EXPECT_EQ(n.min(), 0);
        EXPECT_EQ(normalize(n), n);
        if (n.size() > 1) {
            EXPECT_EQ(difference_gcd(n), 1);
        }
        for (auto al : alphas) {
            const auto want = al > 0 ? n : normalize(n.negated());
            EXPECT_EQ(normalize(affine(a, al, trial - 25)), want) << to_string(a) << " by " << al;
        }
    }
}

TEST(RepCount, Conventions)
{
    const auto ten = IntSet::interval(0, 10);
    EXPECT_EQ(rep_count(ten, RepMode::sum, 4), 3u);
    EXPECT_EQ(rep_count(ten, RepMode::sum, 4, PairOrder::ordered), 5u);
    EXPECT_EQ(rep_count(IntSet{0, 2, 3}, RepMode::sum, 5), 1u);
    EXPECT_EQ(rep_count(conway, RepMode::diff, 0), conway.size());
    EXPECT_EQ(rep_count(conway, RepMode::sum, 1000), 0u);

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = from_set(oracle::random_set(rng, -8, 20, 0.4));
        const auto k = a.size();
        std::size_t sum_total = 0, diff_total = 0;
        for (std::int64_t v = 2 * a.min(); v <= 2 * a.max(); ++v) sum_total += rep_count(a, RepMode::sum, v);
        for (std::int64_t v = -a.diameter(); v <= a.diameter(); ++v) diff_total += rep_count(a, RepMode::diff, v);
        EXPECT_EQ(sum_total, k * (k + 1) / 2);
        EXPECT_EQ(diff_total, k * k);
    }
}

TEST(Text, RoundTripAndRejects)
{
    EXPECT_EQ(to_string(conway), "0,2,3,4,7,11,12,14");
    EXPECT_EQ(parse_intset("0,2,3,4,7,11,12,14"), conway);
    EXPECT_EQ(parse_intset(" {3, -1 ,2} "), (IntSet{-1, 2, 3}));
    EXPECT_THROW(parse_intset("1,2,2"), Error);
    EXPECT_THROW(parse_intset("1,x"), Error);
    EXPECT_THROW(parse_intset(""), Error);
    EXPECT_THROW(parse_intset("1,,2"), Error);
}

TEST(LinForm, Canonical)
{
    EXPECT_EQ((LinForm{1, 3}.canonical()), (LinForm{3, 1}));
    EXPECT_EQ((LinForm{2, 1}.length()), 3u);
}
