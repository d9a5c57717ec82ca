#pragma once

// CSV and JSON renderers shared by the command-line tool and the acceptance
// runner, so both emit byte-for-byte the same payloads.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mstd/mstd.hpp"

namespace mstd::report {

using nlohmann::json;

inline std::string num(double x)
{
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline std::string num(std::uint64_t x) { return std::to_string(x); }
inline std::string num(std::int64_t x) { return std::to_string(x); }
inline std::string num(unsigned x) { return std::to_string(x); }
inline std::string num(int x) { return std::to_string(x); }

/// Comma-joins the fields of one CSV row.
template <class... Ts>
std::string row(const Ts&... fields)
{
    std::string out;
    ((out += (out.empty() ? "" : ","), out += fields), ...);
    return out + "\n";
}

inline const char* bool_text(bool b) { return b ? "1" : "0"; }

// --- enumeration ----------------------------------------------------------

inline std::string density_csv(const std::vector<DensityRecord>& records)
{
    std::string out = "n,fix_zero,universe,sum_dominant,balanced,difference_dominated,density\n";
    for (const auto& r : records)
        out += row(num(r.n), std::string(bool_text(r.fix_zero)), num(r.universe), num(r.sum_dominant),
                   num(r.balanced), num(r.difference_dominated), num(r.density()));
    return out;
}

// --- sampling -------------------------------------------------------------

inline const char* sample_header =
    "model,n,c,delta,p,seed,trials,resamples,mean_size,mean_sum_card,se_sum_card,mean_diff_card,se_diff_card,"
    "mean_missing_sums,se_missing_sums,mean_missing_diffs,se_missing_diffs,mean_ratio,se_ratio,"
    "sum_dominant,balanced,difference_dominated,sum_dominant_density,sum_dominant_density_se\n";

inline std::string sample_row(const ProbModel& m, const SampleStats& s)
{
    return row(std::string(to_string(m.kind)), num(m.n), num(m.c), num(m.delta), num(m.p()), num(m.seed),
               num(s.trials), num(s.resamples), num(s.size.mean), num(s.sum_card.mean), num(s.sum_card.std_error()),
               num(s.diff_card.mean), num(s.diff_card.std_error()), num(s.missing_sums.mean),
               num(s.missing_sums.std_error()), num(s.missing_diffs.mean), num(s.missing_diffs.std_error()),
               num(s.ratio.mean), num(s.ratio.std_error()), num(s.count(Label::sum_dominant)),
               num(s.count(Label::balanced)), num(s.count(Label::difference_dominated)),
               num(s.density(Label::sum_dominant)), num(s.density_error(Label::sum_dominant)));
}

inline std::string sample_csv(const ProbModel& m, const SampleStats& s) { return sample_header + sample_row(m, s); }

/// Joint distribution of (missing sums, missing diffs).
inline std::string joint_missing_csv(const SampleStats& s)
{
    std::string out = "missing_sums,missing_diffs,count,frequency\n";
    for (const auto& [key, hits] : s.joint_missing)
        out += row(num(key.first), num(key.second), num(hits),
                   num(static_cast<double>(hits) / static_cast<double>(s.trials)));
    return out;
}

inline std::string case_scaling_csv(const std::vector<std::pair<ProbModel, CaseScaling>>& rows)
{
    std::string out =
        "regime,c,delta,n,p,trials,expected_size,mean_sum_card,predicted_sums,mean_diff_card,predicted_diffs,"
        "mean_missing_sums,predicted_missing_sums,mean_missing_diffs,predicted_missing_diffs,mean_ratio,"
        "predicted_ratio\n";
    for (const auto& [m, cs] : rows)
        out += row(std::string(to_string(cs.regime)), num(m.c), num(m.delta), num(m.n), num(cs.p),
                   num(cs.stats.trials), num(cs.expected_size), num(cs.stats.sum_card.mean), num(cs.predicted_sums),
                   num(cs.stats.diff_card.mean), num(cs.predicted_diffs), num(cs.stats.missing_sums.mean),
                   num(cs.predicted_missing_sums), num(cs.stats.missing_diffs.mean), num(cs.predicted_missing_diffs),
                   num(cs.stats.ratio.mean), num(cs.predicted_ratio));
    return out;
}

/// value,mean_count rows; the optional third column carries the tent prediction.
inline std::string sum_profile_csv(const RepProfile& p, bool with_prediction = false)
{
    std::string out = with_prediction ? "value,mean_count,predicted\n" : "value,mean_count\n";
    for (std::size_t k = 0; k < p.sums.size(); ++k) {
        const auto v = static_cast<std::int64_t>(k);
        out += with_prediction ? row(num(v), num(p.sums[k]), num(predicted_sum_reps(p.n, v)))
                               : row(num(v), num(p.sums[k]));
    }
    return out;
}

inline std::string diff_profile_csv(const RepProfile& p, bool with_prediction = false)
{
    std::string out = with_prediction ? "value,mean_count,predicted\n" : "value,mean_count\n";
    for (std::size_t k = 0; k < p.diffs.size(); ++k) {
        const auto v = static_cast<std::int64_t>(k) - static_cast<std::int64_t>(p.n) + 1;
        out += with_prediction ? row(num(v), num(p.diffs[k]), num(predicted_diff_reps(p.n, v)))
                               : row(num(v), num(p.diffs[k]));
    }
    return out;
}

struct RatioPoint {
    std::uint64_t n = 0;
    double c = 0.0;
    SampleStats stats;
    std::string warning;
};

/// n,c,trials,observed,std_error,predicted,warning
inline std::string ratio_csv(const std::vector<RatioPoint>& points)
{
    std::string out = "n,c,trials,observed,std_error,predicted,warning\n";
    for (const auto& pt : points)
        out += row(num(pt.n), num(pt.c), num(pt.stats.trials), num(pt.stats.ratio.mean), num(pt.stats.ratio.std_error()),
                   num(predicted_ratio(pt.c)), pt.warning);
    return out;
}

// --- JSON -----------------------------------------------------------------

inline json classification_json(const IntSet& a, const Classification& c)
{
    return {{"set", to_string(a)},
            {"sum_card", c.sum_card},
            {"diff_card", c.diff_card},
            {"excess", c.excess},
            {"label", std::string(to_string(c.label))}};
}

inline json comparison_json(const IntSet& a, const LinComparison& cmp)
{
    auto form = [](LinForm f) { return json{{"s", f.s}, {"d", f.d}, {"text", form_text(f)}}; };
    return {{"set", to_string(a)},
            {"f1", form(cmp.first)},
            {"f2", form(cmp.second)},
            {"f1_card", cmp.first_card},
            {"f2_card", cmp.second_card},
            {"order", cmp.order()}};
}

inline json generational_json(const IntSet& a, unsigned k, const Generational& g)
{
    return {{"set", to_string(a)}, {"k", k}, {"holds", g.holds}, {"excess", g.excess}};
}

inline json stabilization_json(const IntSet& a, const StabilizationReport& r)
{
    return {{"set", to_string(a)},
            {"step", r.step},
            {"slope", r.slope},
            {"constant", r.constant},
            {"onset", r.onset},
            {"k_max", r.k_max},
            {"stabilized", r.stabilized},
            {"onset_within_slope", r.onset_within_slope()},
            {"sizes", r.sizes}};
}

inline json claim_json(const ClaimResult& r)
{
    return {{"entry", r.entry}, {"claim", r.claim}, {"holds", r.holds}, {"detail", r.detail}};
}

inline json error_json(std::string_view error, std::string_view module, std::string_view detail)
{
    return {{"error", error}, {"module", module}, {"detail", detail}};
}

}  // namespace mstd::report
