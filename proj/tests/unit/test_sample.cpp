#include <gtest/gtest.h>

#include <cmath>

#include "mstd/sample.hpp"

using namespace mstd;

TEST(Model, Validation)
{
    EXPECT_DOUBLE_EQ(ProbModel::uniform(10).p(), 0.5);
    EXPECT_NEAR(ProbModel::decay(0.1, 0.5, 1'000'000).p(), 1e-4, 1e-15);
    EXPECT_THROW(ProbModel::constant(0.0, 10).validate(), Error);
    EXPECT_THROW(ProbModel::constant(1.5, 10).validate(), Error);
    EXPECT_THROW(ProbModel::uniform(0).validate(), Error);
    EXPECT_NO_THROW(ProbModel::constant(1.0, 10).validate());
}

TEST(Draw, DeterministicAndInRange)
{
    for (const auto& model :
         {ProbModel::uniform(100, 9), ProbModel::constant(0.001, 100'000, 9), ProbModel::decay(0.1, 0.5, 1'000'000, 9)}) {
        for (std::uint64_t t = 0; t < 50; ++t) {
            const auto a = sample_set(model, t);
            const auto b = sample_set(model, t);
            EXPECT_EQ(a.set, b.set);
            ASSERT_FALSE(a.set.empty());
            EXPECT_GE(a.set.min(), 0);
            EXPECT_LT(a.set.max(), static_cast<std::int64_t>(model.n));
        }
        EXPECT_NE(sample_set(model, 0).set, sample_set(model, 1).set);
    }
    EXPECT_EQ(sample_set(ProbModel::constant(1.0, 37), 3).set, IntSet::interval(0, 36));
}

TEST(Draw, MeanSizes)
{
    const auto half = mc_stats(ProbModel::uniform(100, 1), 10'000, {4});
    EXPECT_GE(half.size.mean, 49.0);
    EXPECT_LE(half.size.mean, 51.0);

    const auto sparse = mc_stats(ProbModel::decay(0.1, 0.5, 1'000'000, 2), 2000, {4});
    EXPECT_NEAR(sparse.size.mean, 100.0, 5.0);

    // Geometric skipping against the plain coin-flip path on either side of 1/64.
    const auto below = mc_stats(ProbModel::constant(0.012, 20'000, 3), 2000, {4});
    const auto above = mc_stats(ProbModel::constant(0.02, 20'000, 3), 2000, {4});
    EXPECT_NEAR(below.size.mean / 240.0, 1.0, 0.02);
    EXPECT_NEAR(above.size.mean / 400.0, 1.0, 0.02);
    EXPECT_NEAR(below.size.variance() / (20'000 * 0.012 * 0.988), 1.0, 0.15);
}

TEST(Draw, EmptyDrawsAreResampled)
{
    const auto model = ProbModel::constant(0.01, 20, 5);
    const auto s = mc_stats(model, 5000, {2});
    EXPECT_GT(s.resamples, 0u);
    EXPECT_EQ(s.trials, 5000u);
    EXPECT_GE(s.size.mean, 1.0);
}

TEST(Stats, WorkerIndependence)
{
    const auto model = ProbModel::uniform(60, 77);
    const auto one = mc_stats(model, 5000, {1});
    for (unsigned w : {2u, 5u, 8u}) {
        const auto many = mc_stats(model, 5000, {w});
        EXPECT_EQ(many.sum_card.mean, one.sum_card.mean);
        EXPECT_EQ(many.sum_card.m2, one.sum_card.m2);
        EXPECT_EQ(many.ratio.mean, one.ratio.mean);
        EXPECT_EQ(many.label_counts, one.label_counts);
        EXPECT_EQ(many.joint_missing, one.joint_missing);
    }
}

TEST(Stats, MomentsMerge)
{
    Moments all, left, right;
    for (int i = 0; i < 100; ++i) {
        const double x = std::sin(i) * 10 + i * 0.1;
        all.add(x);
        (i < 37 ? left : right).add(x);
    }
    left.merge(right);
    EXPECT_EQ(left.count, all.count);
    EXPECT_NEAR(left.mean, all.mean, 1e-12);
    EXPECT_NEAR(left.variance(), all.variance(), 1e-9);
}

TEST(Stats, JointTableMarginals)
{
    const auto s = mc_stats(ProbModel::uniform(40, 3), 4000, {4});
    double total = 0.0, mean_s = 0.0, mean_d = 0.0;
    for (const auto& [key, f] : s.joint_frequencies()) {
        total += f;
        mean_s += f * static_cast<double>(key.first);
        mean_d += f * static_cast<double>(key.second);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(mean_s, s.missing_sums.mean, 1e-9);
    EXPECT_NEAR(mean_d, s.missing_diffs.mean, 1e-9);
}

TEST(Stats, FullIntervalIsBalanced)
{
    const auto s = mc_stats(ProbModel::constant(1.0, 50, 1), 20);
    EXPECT_EQ(s.count(Label::balanced), 20u);
    EXPECT_EQ(s.missing_sums.mean, 0.0);
    EXPECT_EQ(s.missing_diffs.mean, 0.0);
    EXPECT_EQ(s.density(Label::sum_dominant), 0.0);
}

TEST(Stats, UniformMeans)
{
    const auto s = mc_stats(ProbModel::uniform(100, 12), 20'000, {8});
    EXPECT_LE(s.sum_card.mean, 199.0);
    EXPECT_GT(s.diff_card.mean, s.sum_card.mean);
    EXPECT_GT(s.missing_sums.mean, s.missing_diffs.mean);
}

TEST(Stats, SparseDecayIsDifferenceDominated)
{
    const auto s = mc_density(ProbModel::decay(0.1, 0.75, 1'000'000, 4), 10'000, {8});
    EXPECT_EQ(s.count(Label::sum_dominant), 0u);
}

TEST(Threshold, Function)
{
    EXPECT_THROW(threshold_g(0.0), Error);
    EXPECT_THROW(threshold_g(-1.0), Error);
    const double tiny = threshold_g(1e-8) / 1e-8;
    EXPECT_GE(tiny, 1 - 1e-6);
    EXPECT_LE(tiny, 1.0);
    // Series and closed form agree across the switch.
    EXPECT_NEAR(threshold_g(0.999e-3), 2 * (std::expm1(-0.999e-3) + 0.999e-3) / 0.999e-3, 1e-12);
    double prev = 0.0;
    for (double x = 1e-6; x < 50; x *= 1.3) {
        const double g = threshold_g(x);
        EXPECT_GT(g, prev);
        EXPECT_LT(g, 2.0);
        prev = g;
    }
    EXPECT_NEAR(predicted_ratio(0.1), 1.99667, 1e-4);
    EXPECT_NEAR(predicted_ratio(0.01), 1.99997, 1e-4);
    const double r = predicted_ratio(1e-4);
    EXPECT_GE(r, 1.9999);
    EXPECT_LE(r, 2.0);
    EXPECT_NEAR(predicted_ratio(1e3), 1.0, 1e-2);
    prev = 3.0;
    for (double c = 0.05; c < 20; c *= 1.5) {
        EXPECT_LT(predicted_ratio(c), prev);
        prev = predicted_ratio(c);
    }
}

TEST(Ratio, DecreasesInC)
{
    double prev = 3.0;
    for (double c : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        const auto s = mc_ratio(c, 1'000'000, 20, 100, {8});
        EXPECT_LT(s.ratio.mean, prev) << c;
        prev = s.ratio.mean;
    }
    EXPECT_THROW(mc_ratio(2000.0, 100, 10, 1), Error);
}

TEST(CaseScaling, Dispatch)
{
    const auto crit = mc_case_scaling(0.2, 0.5, 100'000, 5, 1);
    EXPECT_EQ(crit.regime, Regime::critical);
    EXPECT_NEAR(crit.predicted_ratio, predicted_ratio(0.2), 1e-12);
    const auto sparse = mc_case_scaling(1.0, 0.75, 100'000, 5, 1);
    EXPECT_EQ(sparse.regime, Regime::sparse);
    EXPECT_TRUE(std::isnan(sparse.predicted_missing_sums));
    const auto dense = mc_case_scaling(0.3, 0.0, 2000, 5, 1);
    EXPECT_EQ(dense.regime, Regime::dense);
    EXPECT_NEAR(dense.predicted_missing_sums, 4 / 0.09, 1e-9);
    EXPECT_THROW(mc_case_scaling(0.3, 1.0, 2000, 5, 1), Error);
    EXPECT_THROW(mc_case_scaling(0.3, -0.1, 2000, 5, 1), Error);
}

TEST(RepProfile, FullIntervalIsExact)
{
    const std::uint64_t n = 30;
    const auto p = mc_rep_profile(ProbModel::constant(1.0, n, 1), 3);
    for (std::int64_t k = 0; k <= 2 * static_cast<std::int64_t>(n) - 2; ++k) {
        const double ordered = static_cast<double>(std::min<std::int64_t>(k, 2 * n - 2 - k) + 1);
        EXPECT_DOUBLE_EQ(p.sum_at(k), ordered);
    }
    for (std::int64_t k = -29; k <= 29; ++k) EXPECT_DOUBLE_EQ(p.diff_at(k), static_cast<double>(n - std::abs(k)));
    EXPECT_DOUBLE_EQ(p.zero_spike, 30.0);
}

TEST(RepProfile, UniformShape)
{
    const auto p = mc_rep_profile(ProbModel::uniform(100, 8), 1000, true, {8});
    EXPECT_TRUE(p.zero_spike_removed);
    EXPECT_TRUE(std::isnan(p.diff_at(0)));
    EXPECT_NEAR(p.zero_spike, 50.0, 2.0);
    for (std::int64_t k = 50; k <= 148; ++k) EXPECT_NEAR(p.sum_at(k), predicted_sum_reps(100, k), 2.5) << k;
    for (std::int64_t k = -49; k <= 49; ++k)
        if (k != 0) {
            EXPECT_NEAR(p.diff_at(k), predicted_diff_reps(100, k), 2.5) << k;
        }
    const auto again = mc_rep_profile(ProbModel::uniform(100, 8), 1000, true, {3});
    EXPECT_EQ(again.sums, p.sums);
}

TEST(ElementProfile, MiddleNearHalf)
{
    const auto prof = mc_mstd_element_profile(60, 5'000'000, 400, 5, {8});
    EXPECT_GE(prof.mstd_count, 400u);
    double fringe_dev = 0.0, middle_dev = 0.0, middle_mean = 0.0;
    for (std::size_t i = 0; i < 60; ++i) {
        EXPECT_GE(prof.frequency[i], 0.0);
        EXPECT_LE(prof.frequency[i], 1.0);
        const double dev = std::abs(prof.frequency[i] - 0.5);
        if (i >= 20 && i < 40) {
            EXPECT_NEAR(prof.frequency[i], 0.5, 0.1) << i;
            middle_dev = std::max(middle_dev, dev);
            middle_mean += prof.frequency[i] / 20.0;
        } else if (i < 5 || i >= 55) {
            fringe_dev = std::max(fringe_dev, dev);
        }
    }
    EXPECT_NEAR(middle_mean, 0.5, 0.1);
    EXPECT_GT(fringe_dev, middle_dev);
    const auto again = mc_mstd_element_profile(60, 5'000'000, 400, 5, {3});
    EXPECT_EQ(again.frequency, prof.frequency);
    EXPECT_EQ(again.trials_used, prof.trials_used);
}

TEST(ElementProfile, BudgetError)
{
    try {
        mc_mstd_element_profile(40, 5000, 100, 1);
        FAIL() << "expected a budget error";
    } catch (const ProfileBudgetError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::budget);
        EXPECT_EQ(e.partial().trials_used, 5000u);
        EXPECT_LT(e.partial().mstd_count, 100u);
    }
}
