#pragma once

// Random subsets of {0, ..., n-1} under the uniform and binomial models, and
// Monte Carlo statistics over them.
//
// Trials are grouped into fixed-size chunks whose boundaries depend only on
// the trial count. Each chunk is reduced on its own and the chunk results are
// merged in index order, so every statistic is bit-identical for any worker
// count.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mstd/classify.hpp"
#include "mstd/error.hpp"
#include "mstd/intset.hpp"
#include "mstd/parallel.hpp"
#include "mstd/rng.hpp"

namespace mstd {

enum class ModelKind { uniform, bernoulli_const, bernoulli_decay };

inline std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::uniform: return "uniform";
    case ModelKind::bernoulli_const: return "const";
    case ModelKind::bernoulli_decay: return "decay";
    }
    return "unknown";
}

/// Sampling law over subsets of {0, ..., n-1}: every element is included
/// independently with probability p, where p is 1/2 (uniform), a constant,
/// or c * n^(-delta).
struct ProbModel {
    ModelKind kind = ModelKind::uniform;
    double c = 0.5;
    double delta = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;

    static ProbModel uniform(std::uint64_t n, std::uint64_t seed = 0) { return {ModelKind::uniform, 0.5, 0.0, n, seed}; }
    static ProbModel constant(double p, std::uint64_t n, std::uint64_t seed = 0)
    {
        return {ModelKind::bernoulli_const, p, 0.0, n, seed};
    }
    static ProbModel decay(double c, double delta, std::uint64_t n, std::uint64_t seed = 0)
    {
        return {ModelKind::bernoulli_decay, c, delta, n, seed};
    }

    double p() const
    {
        switch (kind) {
        case ModelKind::uniform: return 0.5;
        case ModelKind::bernoulli_const: return c;
        case ModelKind::bernoulli_decay: return c * std::pow(static_cast<double>(n), -delta);
        }
        return 0.0;
    }

    void validate() const
    {
        if (n == 0) throw Error(ErrorKind::parameter, "sample", "model needs n >= 1");
        const double prob = p();
        if (!(prob > 0.0 && prob <= 1.0))
            throw Error(ErrorKind::parameter, "sample",
                        "inclusion probability " + std::to_string(prob) + " is outside (0, 1]");
    }
};

struct SampledSet {
    IntSet set;
    /// Empty draws thrown away before this one.
    std::uint32_t resamples = 0;
};

namespace detail {

// Below this inclusion probability positions are drawn by geometric skipping.
inline constexpr double sparse_probability = 1.0 / 64.0;

inline IntSet draw_once(const ProbModel& model, double p, std::mt19937_64& engine)
{
    const std::uint64_t n = model.n;
    if (p >= 1.0) return IntSet::interval(0, static_cast<std::int64_t>(n) - 1);
    if (p < sparse_probability) {
        std::geometric_distribution<std::int64_t> gap(p);
        std::vector<std::int64_t> elems;
        elems.reserve(static_cast<std::size_t>(static_cast<double>(n) * p * 1.2) + 8);
        for (std::int64_t pos = gap(engine); pos < static_cast<std::int64_t>(n); pos += 1 + gap(engine))
            elems.push_back(pos);
        return IntSet::from_sorted_unique(std::move(elems));
    }
    std::vector<std::uint64_t> words(words_for(n), 0);
    if (p == 0.5) {
        for (auto& w : words) w = engine();
    } else {
        for (std::uint64_t i = 0; i < n; ++i)
            if (unit_double(engine) < p) words[i / word_bits] |= std::uint64_t{1} << (i % word_bits);
    }
    if (const auto tail = n % word_bits; tail != 0) words.back() &= (std::uint64_t{1} << tail) - 1;
    return IntSet::from_bits(0, std::move(words));
}

}  // namespace detail

/// Deterministic in (model.seed, trial). Empty draws are redrawn from the
/// same stream and counted.
inline SampledSet sample_set(const ProbModel& model, std::uint64_t trial)
{
    model.validate();
    auto engine = trial_engine(model.seed, trial);
    const double p = model.p();
    SampledSet out;
    while (true) {
        out.set = detail::draw_once(model, p, engine);
        if (!out.set.empty()) return out;
        ++out.resamples;
    }
}

/// Running mean and variance, mergeable (Chan et al.).
struct Moments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    void merge(const Moments& o)
    {
        if (o.count == 0) return;
        if (count == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(count + o.count);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.count) / total;
        m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
        count += o.count;
    }

    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
    double std_error() const { return count > 0 ? stddev() / std::sqrt(static_cast<double>(count)) : 0.0; }
};

struct SampleStats {
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t resamples = 0;
    Moments size;
    Moments sum_card;
    Moments diff_card;
    Moments missing_sums;
    Moments missing_diffs;
    Moments ratio;  // |A-A| / |A+A|
    std::array<std::uint64_t, 3> label_counts{};
    /// (missing sums, missing diffs) -> number of trials.
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> joint_missing;

    std::uint64_t count(Label label) const { return label_counts[static_cast<std::size_t>(label)]; }

    double density(Label label) const
    {
        return trials ? static_cast<double>(count(label)) / static_cast<double>(trials) : 0.0;
    }

    /// Binomial standard error of density(label).
    double density_error(Label label) const
    {
        if (trials == 0) return 0.0;
        const double q = density(label);
        return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
    }

    /// Empirical joint distribution of (missing sums, missing diffs).
    std::map<std::pair<std::int64_t, std::int64_t>, double> joint_frequencies() const
    {
        std::map<std::pair<std::int64_t, std::int64_t>, double> out;
        for (const auto& [key, hits] : joint_missing)
            out[key] = static_cast<double>(hits) / static_cast<double>(trials);
        return out;
    }

    void merge(const SampleStats& o)
    {
        trials += o.trials;
        resamples += o.resamples;
        size.merge(o.size);
        sum_card.merge(o.sum_card);
        diff_card.merge(o.diff_card);
        missing_sums.merge(o.missing_sums);
        missing_diffs.merge(o.missing_diffs);
        ratio.merge(o.ratio);
        for (std::size_t i = 0; i < label_counts.size(); ++i) label_counts[i] += o.label_counts[i];
        for (const auto& [key, hits] : o.joint_missing) joint_missing[key] += hits;
    }
};

struct SampleOptions {
    unsigned workers = 1;
};

namespace detail {

/// Chunk length as a function of the trial count only.
inline std::uint64_t chunk_length(std::uint64_t trials)
{
    return std::clamp<std::uint64_t>(trials / 64, 1, 256);
}

/// Splits [0, trials) into chunks, runs chunk(first, last) -> R for each, and
/// returns the per-chunk results in order.
template <class R, class Chunk>
std::vector<R> run_chunks(std::uint64_t trials, unsigned workers, Chunk&& chunk)
{
    const std::uint64_t len = chunk_length(trials);
    const std::uint64_t chunks = (trials + len - 1) / len;
    std::vector<R> results(chunks);
    parallel_for(chunks, workers, [&](std::size_t i) {
        const std::uint64_t first = i * len;
        results[i] = chunk(first, std::min(trials, first + len));
    });
    return results;
}

inline void observe(SampleStats& s, const SampledSet& draw, std::uint64_t n)
{
    const auto c = classify(draw.set);
    const double possible = 2.0 * static_cast<double>(n) - 1.0;
    const auto sums = static_cast<double>(c.sum_card);
    const auto diffs = static_cast<double>(c.diff_card);
    ++s.trials;
    s.resamples += draw.resamples;
    s.size.add(static_cast<double>(draw.set.size()));
    s.sum_card.add(sums);
    s.diff_card.add(diffs);
    s.missing_sums.add(possible - sums);
    s.missing_diffs.add(possible - diffs);
    s.ratio.add(diffs / sums);
    ++s.label_counts[static_cast<std::size_t>(c.label)];
    const auto span = static_cast<std::int64_t>(2 * n - 1);
    ++s.joint_missing[{span - static_cast<std::int64_t>(c.sum_card), span - static_cast<std::int64_t>(c.diff_card)}];
}

}  // namespace detail

/// Classifies `trials` sampled sets and aggregates every statistic.
inline SampleStats mc_stats(const ProbModel& model, std::uint64_t trials, const SampleOptions& opts = {})
{
    model.validate();
    if (trials == 0) throw Error(ErrorKind::parameter, "sample", "trials must be at least 1");
    auto parts = detail::run_chunks<SampleStats>(trials, opts.workers, [&](std::uint64_t first, std::uint64_t last) {
        SampleStats s;
        for (std::uint64_t t = first; t < last; ++t) detail::observe(s, sample_set(model, t), model.n);
        return s;
    });
    SampleStats total;
    for (const auto& part : parts) total.merge(part);
    total.n = model.n;
    return total;
}

/// Label densities with binomial standard errors (see SampleStats::density).
inline SampleStats mc_density(const ProbModel& model, std::uint64_t trials, const SampleOptions& opts = {})
{
    return mc_stats(model, trials, opts);
}

/// Mean missing sums and differences plus their joint frequency table.
inline SampleStats mc_missing(const ProbModel& model, std::uint64_t trials, const SampleOptions& opts = {})
{
    return mc_stats(model, trials, opts);
}

/// g(x) = 2 (e^-x - (1 - x)) / x, the limiting |A+A|/n and |A-A|/n scale at
/// the critical density c / sqrt(n).
inline double threshold_g(double x)
{
    if (!(x > 0.0)) throw Error(ErrorKind::domain, "sample", "g(x) needs x > 0");
    if (x < 1e-3) {
        // 2 * sum_{j>=2} (-x)^j / j! / x, truncated well below double precision.
        double term = x;  // j = 2
        double sum = term;
        for (int j = 3; j <= 9; ++j) {
            term *= -x / j;
            sum += term;
        }
        return sum;
    }
    return 2.0 * (std::expm1(-x) + x) / x;
}

/// Limit of |A-A| / |A+A| under p(n) = c / sqrt(n): g(c^2) / g(c^2 / 2).
inline double predicted_ratio(double c)
{
    if (!(c > 0.0)) throw Error(ErrorKind::domain, "sample", "predicted_ratio needs c > 0");
    return threshold_g(c * c) / threshold_g(c * c / 2.0);
}

/// Samples with p(n) = c / sqrt(n).
inline SampleStats mc_ratio(double c, std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                            const SampleOptions& opts = {})
{
    const auto model = ProbModel::decay(c, 0.5, n, seed);
    const double p = model.p();
    if (!(p > 0.0 && p < 1.0))
        throw Error(ErrorKind::parameter, "sample", "c / sqrt(n) must lie in (0, 1)");
    return mc_stats(model, trials, opts);
}

enum class Regime { sparse, critical, dense };  // cases (i), (ii), (iii)

inline std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::sparse: return "sparse";
    case Regime::critical: return "critical";
    case Regime::dense: return "dense";
    }
    return "unknown";
}

/// Observed statistics next to the asymptotic predictions of the regime the
/// exponent delta falls in. Predictions that the regime does not make are NaN.
struct CaseScaling {
    SampleStats stats;
    Regime regime = Regime::critical;
    double p = 0.0;
    double expected_size = 0.0;  // n p
    double predicted_sums = std::numeric_limits<double>::quiet_NaN();
    double predicted_diffs = std::numeric_limits<double>::quiet_NaN();
    double predicted_missing_sums = std::numeric_limits<double>::quiet_NaN();
    double predicted_missing_diffs = std::numeric_limits<double>::quiet_NaN();
    double predicted_ratio = std::numeric_limits<double>::quiet_NaN();

    double sums_vs_prediction() const { return stats.sum_card.mean / predicted_sums; }
    double diffs_vs_prediction() const { return stats.diff_card.mean / predicted_diffs; }
    double missing_sums_vs_prediction() const { return stats.missing_sums.mean / predicted_missing_sums; }
    double missing_diffs_vs_prediction() const { return stats.missing_diffs.mean / predicted_missing_diffs; }
};

/// p(n) = c n^(-delta) with delta in [0, 1); delta = 0 is the constant model.
inline CaseScaling mc_case_scaling(double c, double delta, std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                                   const SampleOptions& opts = {})
{
    if (!(delta >= 0.0 && delta < 1.0))
        throw Error(ErrorKind::parameter, "sample", "delta must lie in [0, 1)");
    const auto model = ProbModel::decay(c, delta, n, seed);
    CaseScaling out;
    out.p = model.p();
    if (!(out.p > 0.0 && out.p < 1.0)) throw Error(ErrorKind::parameter, "sample", "c n^-delta must lie in (0, 1)");
    out.expected_size = static_cast<double>(n) * out.p;
    out.stats = mc_stats(model, trials, opts);
    if (delta > 0.5) {
        out.regime = Regime::sparse;
        out.predicted_sums = out.expected_size * out.expected_size / 2.0;
        out.predicted_diffs = out.expected_size * out.expected_size;
        out.predicted_ratio = 2.0;
    } else if (delta < 0.5) {
        out.regime = Regime::dense;
        out.predicted_missing_sums = 4.0 / (out.p * out.p);
        out.predicted_missing_diffs = 2.0 / (out.p * out.p);
        out.predicted_ratio = 1.0;
    } else {
        out.regime = Regime::critical;
        out.predicted_sums = threshold_g(c * c / 2.0) * static_cast<double>(n);
        out.predicted_diffs = threshold_g(c * c) * static_cast<double>(n);
        out.predicted_ratio = predicted_ratio(c);
    }
    return out;
}

/// Mean number of representations of every possible sum (0 .. 2n-2) and
/// difference (-(n-1) .. n-1), counting ordered pairs.
struct RepProfile {
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    std::vector<double> sums;   // index k <-> sum k
    std::vector<double> diffs;  // index k <-> difference k - (n - 1)
    /// Mean representations of 0 as a difference, i.e. mean |A|.
    double zero_spike = 0.0;
    bool zero_spike_removed = false;

    double sum_at(std::int64_t k) const { return sums.at(static_cast<std::size_t>(k)); }
    double diff_at(std::int64_t k) const { return diffs.at(static_cast<std::size_t>(k + static_cast<std::int64_t>(n) - 1)); }
};

/// n/4 - |n - k|/4.
inline double predicted_sum_reps(std::uint64_t n, std::int64_t k)
{
    const auto nn = static_cast<double>(n);
    return nn / 4.0 - std::abs(nn - static_cast<double>(k)) / 4.0;
}

/// n/4 - |k|/4.
inline double predicted_diff_reps(std::uint64_t n, std::int64_t k)
{
    return static_cast<double>(n) / 4.0 - std::abs(static_cast<double>(k)) / 4.0;
}

inline RepProfile mc_rep_profile(const ProbModel& model, std::uint64_t trials, bool remove_zero_spike = false,
                                 const SampleOptions& opts = {})
{
    model.validate();
    if (trials == 0) throw Error(ErrorKind::parameter, "sample", "trials must be at least 1");
    const std::uint64_t n = model.n;
    const std::size_t bins = static_cast<std::size_t>(2 * n - 1);
    using Counts = std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>;
    auto parts = detail::run_chunks<Counts>(trials, opts.workers, [&](std::uint64_t first, std::uint64_t last) {
        Counts c{std::vector<std::uint64_t>(bins, 0), std::vector<std::uint64_t>(bins, 0)};
        for (std::uint64_t t = first; t < last; ++t) {
            const auto elems = sample_set(model, t).set.elements();
            for (auto x : elems)
                for (auto y : elems) {
                    ++c.first[static_cast<std::size_t>(x + y)];
                    ++c.second[static_cast<std::size_t>(x - y + static_cast<std::int64_t>(n) - 1)];
                }
        }
        return c;
    });
    std::vector<std::uint64_t> sum_total(bins, 0);
    std::vector<std::uint64_t> diff_total(bins, 0);
    for (const auto& [s, d] : parts)
        for (std::size_t i = 0; i < bins; ++i) {
            sum_total[i] += s[i];
            diff_total[i] += d[i];
        }

    RepProfile out;
    out.n = n;
    out.trials = trials;
    out.sums.resize(bins);
    out.diffs.resize(bins);
    const auto t = static_cast<double>(trials);
    for (std::size_t i = 0; i < bins; ++i) {
        out.sums[i] = static_cast<double>(sum_total[i]) / t;
        out.diffs[i] = static_cast<double>(diff_total[i]) / t;
    }
    out.zero_spike = out.diffs[static_cast<std::size_t>(n - 1)];
    if (remove_zero_spike) {
        out.diffs[static_cast<std::size_t>(n - 1)] = std::numeric_limits<double>::quiet_NaN();
        out.zero_spike_removed = true;
    }
    return out;
}

/// Inclusion frequency of each element of {0, ..., n-1} among sum-dominant
/// sets drawn from the uniform model by rejection.
struct ElementProfile {
    std::uint64_t n = 0;
    std::uint64_t trials_used = 0;
    std::uint64_t mstd_count = 0;
    std::vector<double> frequency;
};

class ProfileBudgetError : public Error {
public:
    explicit ProfileBudgetError(ElementProfile partial)
        : Error(ErrorKind::budget, "sample",
                "trial budget exhausted after " + std::to_string(partial.mstd_count) + " sum-dominant samples"),
          partial_(std::move(partial))
    {
    }
    const ElementProfile& partial() const noexcept { return partial_; }

private:
    ElementProfile partial_;
};

/// Draws uniform subsets until `target` sum-dominant ones are found or the
/// budget runs out. Chunks are consumed in order, so the trial at which the
/// target is met does not depend on the worker count.
inline ElementProfile mc_mstd_element_profile(std::uint64_t n, std::uint64_t trial_budget, std::uint64_t target,
                                              std::uint64_t seed, const SampleOptions& opts = {})
{
    const auto model = ProbModel::uniform(n, seed);
    model.validate();
    constexpr std::uint64_t chunk = 4096;
    struct Part {
        std::uint64_t trials = 0;
        std::uint64_t hits = 0;
        std::vector<std::uint64_t> counts;
    };

    ElementProfile out;
    out.n = n;
    std::vector<std::uint64_t> counts(n, 0);
    const unsigned batch = std::max(1u, opts.workers);
    std::uint64_t next = 0;
    while (next < trial_budget && out.mstd_count < target) {
        const std::uint64_t chunks_left = (trial_budget - next + chunk - 1) / chunk;
        const std::size_t width = static_cast<std::size_t>(std::min<std::uint64_t>(batch, chunks_left));
        std::vector<Part> parts(width);
        parallel_for(width, opts.workers, [&](std::size_t i) {
            const std::uint64_t first = next + i * chunk;
            const std::uint64_t last = std::min(trial_budget, first + chunk);
            Part part;
            part.counts.assign(n, 0);
            for (std::uint64_t t = first; t < last; ++t) {
                ++part.trials;
                const auto draw = sample_set(model, t).set;
                if (classify(draw).label != Label::sum_dominant) continue;
                ++part.hits;
                draw.for_each([&](std::int64_t v) { ++part.counts[static_cast<std::size_t>(v)]; });
            }
            parts[i] = std::move(part);
        });
        for (const auto& part : parts) {
            if (out.mstd_count >= target) break;
            out.trials_used += part.trials;
            out.mstd_count += part.hits;
            for (std::size_t v = 0; v < n; ++v) counts[v] += part.counts[v];
        }
        next += width * chunk;
    }

    out.frequency.assign(n, 0.0);
    if (out.mstd_count > 0)
        for (std::size_t v = 0; v < n; ++v)
            out.frequency[v] = static_cast<double>(counts[v]) / static_cast<double>(out.mstd_count);
    if (out.mstd_count < target) throw ProfileBudgetError(std::move(out));
    return out;
}

}  // namespace mstd
