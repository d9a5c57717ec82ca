#pragma once

// Data series behind the density plot (fig1), the representation profiles
// (fig2), the ratio-versus-c curves (fig3) and the ratio table (table1).

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace mstd::figures {

enum class Budget { desk, full };

inline Budget parse_budget(const std::string& text)
{
    if (text == "desk") return Budget::desk;
    if (text == "full") return Budget::full;
    throw Error(ErrorKind::parse, "cli", "budget must be desk or full, got '" + text + "'");
}

/// File name -> contents. "data.csv" is always present.
using Files = std::map<std::string, std::string>;

struct Fig1Options {
    unsigned nmax = 18;
    std::uint64_t trials = 100'000;
    std::vector<std::uint64_t> mc_sizes{30, 35, 40, 45, 50, 75, 100, 125, 150};
};

inline constexpr std::uint64_t desk_fig1_trial_cap = 1'000'000;
inline constexpr unsigned fig1_exact_limit = 27;

// Below this many expected hits at the ~4.5e-4 density the estimate is noise.
inline std::string low_budget_flag(std::uint64_t trials) { return trials < 22'000 ? "low_budget" : ""; }

inline Files fig1(Fig1Options o, Budget budget, std::uint64_t seed, unsigned workers)
{
    if (o.nmax > fig1_exact_limit)
        throw Error(ErrorKind::capacity, "cli", "fig1: exact enumeration stops at n = 27");
    std::string warn_budget;
    if (budget == Budget::desk && o.trials > desk_fig1_trial_cap) {
        o.trials = desk_fig1_trial_cap;
        warn_budget = "capped";
    }
    std::string out = "n,method,trials,density,std_error,warning\n";
    for (unsigned n = 1; n <= o.nmax; ++n) {
        const auto rec = enumerate_density(n, false, {workers});
        out += report::row(report::num(n), std::string("exact"), report::num(rec.universe), report::num(rec.density()),
                           std::string("0"), std::string());
    }
    for (std::size_t i = 0; i < o.mc_sizes.size(); ++i) {
        const auto n = o.mc_sizes[i];
        if (n <= o.nmax) continue;
        const auto model = ProbModel::uniform(n, seed + i);
        const auto s = mc_density(model, o.trials, {workers});
        std::string warning = low_budget_flag(o.trials);
        if (!warn_budget.empty()) warning = warning.empty() ? warn_budget : warning + ";" + warn_budget;
        out += report::row(report::num(n), std::string("monte_carlo"), report::num(s.trials),
                           report::num(s.density(Label::sum_dominant)),
                           report::num(s.density_error(Label::sum_dominant)), warning);
    }
    return {{"data.csv", out}};
}

inline Files fig2(std::uint64_t n, std::uint64_t trials, std::uint64_t seed, unsigned workers)
{
    const auto prof = mc_rep_profile(ProbModel::uniform(n, seed), trials, true, {workers});
    Files files;
    files["sum_profile.csv"] = report::sum_profile_csv(prof, true);
    files["diff_profile.csv"] = report::diff_profile_csv(prof, true);
    files["data.csv"] = "profile,n,trials,zero_spike,zero_spike_removed\n" +
                        report::row(std::string("sum"), report::num(n), report::num(trials), std::string("nan"),
                                    std::string("0")) +
                        report::row(std::string("diff"), report::num(n), report::num(trials),
                                    report::num(prof.zero_spike), std::string("1"));
    return files;
}

struct Fig3Options {
    std::vector<std::uint64_t> sizes{10'000, 100'000, 1'000'000};
    std::uint64_t trials = 10;
    double c_first = 0.01;
    double c_step = 0.01;
    unsigned c_count = 41;
};

inline Files fig3(const Fig3Options& o, std::uint64_t seed, unsigned workers)
{
    std::vector<report::RatioPoint> points;
    std::uint64_t index = 0;
    for (const auto n : o.sizes)
        for (unsigned i = 0; i < o.c_count; ++i, ++index) {
            const double c = o.c_first + o.c_step * i;
            points.push_back({n, c, mc_ratio(c, n, o.trials, seed + index, {workers}),
                              o.trials < 10 ? "few_trials" : ""});
        }
    return {{"data.csv", report::ratio_csv(points)}};
}

/// Rows (n, c) for c in {0.01, 0.1} and n in {1e5, 1e6, 1e7}; the full budget
/// adds n = 1e8, where the c = 0.1 point uses a single set.
inline std::vector<report::RatioPoint> table1_points(Budget budget, std::uint64_t trials, std::uint64_t seed,
                                                      unsigned workers)
{
    std::vector<std::uint64_t> sizes{100'000, 1'000'000, 10'000'000};
    if (budget == Budget::full) sizes.push_back(100'000'000);
    std::vector<report::RatioPoint> points;
    std::uint64_t index = 0;
    for (const auto n : sizes)
        for (const double c : {0.01, 0.1}) {
            const std::uint64_t t = (n == 100'000'000 && c == 0.1) ? 1 : trials;
            points.push_back({n, c, mc_ratio(c, n, t, seed + index++, {workers}), t < 10 ? "few_trials" : ""});
        }
    return points;
}

inline Files table1(Budget budget, std::uint64_t trials, std::uint64_t seed, unsigned workers)
{
    return {{"data.csv", report::ratio_csv(table1_points(budget, trials, seed, workers))}};
}

}  // namespace mstd::figures
