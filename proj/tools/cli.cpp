#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "figures.hpp"
#include "report.hpp"

#ifndef MSTD_VERSION
#define MSTD_VERSION "0.0.0"
#endif

namespace mstd::cli {

namespace fs = std::filesystem;
using report::json;

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::parameter, "cli", "sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

namespace {

std::string utc_stamp(std::chrono::system_clock::time_point t, bool compact)
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, compact ? "%Y%m%dT%H%M%SZ" : "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Global {
    unsigned workers = 0;
    std::string results = "results";
    bool no_save = false;
    std::vector<std::string> argv;
    std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
};

/// Writes every file atomically (temp + rename) and then the manifest, so a
/// failed run never leaves unflagged data behind.
class Run {
public:
    Run(const Global& g, std::string command, std::uint64_t seed) : g_(g), command_(std::move(command)), seed_(seed) {}

    json config = json::object();
    figures::Files files;
    /// Writes data.csv to this path instead of the results directory.
    std::string out_path;

    std::optional<fs::path> persist()
    {
        if (g_.no_save && out_path.empty()) return std::nullopt;
        fs::path dir;
        fs::path manifest;
        std::map<std::string, fs::path> targets;
        if (!out_path.empty()) {
            const fs::path primary(out_path);
            dir = primary.parent_path().empty() ? fs::path(".") : primary.parent_path();
            for (const auto& [name, _] : files)
                targets[name] = name == "data.csv" ? primary : dir / (primary.stem().string() + "." + name);
            manifest = fs::path(out_path + ".manifest.json");
        } else {
            const fs::path base = fs::path(g_.results) / command_;
            const std::string stem = utc_stamp(g_.started, true) + "-" + std::to_string(seed_);
            dir = base / stem;
            for (int i = 1; fs::exists(dir); ++i) dir = base / (stem + "." + std::to_string(i));
            for (const auto& [name, _] : files) targets[name] = dir / name;
            manifest = dir / "manifest.json";
        }
        fs::create_directories(dir);

        json listed = json::array();
        for (const auto& [name, body] : files) {
            write_atomic(targets[name], body);
            listed.push_back({{"name", name},
                              {"path", targets[name].string()},
                              {"bytes", body.size()},
                              {"sha256", sha256_hex(body)}});
        }
        json m = {{"command", command_},
                  {"argv", g_.argv},
                  {"config", config},
                  {"seed", seed_},
                  {"workers", g_.workers},
                  {"version", MSTD_VERSION},
                  {"started", utc_stamp(g_.started, false)},
                  {"finished", utc_stamp(std::chrono::system_clock::now(), false)},
                  {"files", listed}};
        write_atomic(manifest, m.dump(2) + "\n");
        return dir;
    }

private:
    static void write_atomic(const fs::path& path, const std::string& body)
    {
        const fs::path tmp = path.string() + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            if (!f) throw Error(ErrorKind::parameter, "cli", "cannot write " + tmp.string());
            f << body;
        }
        fs::rename(tmp, path);
    }

    const Global& g_;
    std::string command_;
    std::uint64_t seed_;
};

IntSet set_arg(const std::string& text)
{
    if (!text.empty() && std::isalpha(static_cast<unsigned char>(text.front()))) {
        const auto cat = catalog();
        const auto it = cat.find(text);
        if (it == cat.end()) throw Error(ErrorKind::parse, "cli", "unknown catalog entry '" + text + "'");
        return it->second.set;
    }
    return parse_intset(text);
}

LinForm form_arg(const std::string& text)
{
    unsigned s = 0;
    unsigned d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%u,%u%c", &s, &d, &tail) != 2)
        throw Error(ErrorKind::parse, "cli", "linear form must be 's,d', got '" + text + "'");
    return {s, d};
}

void emit_json(std::ostream& out, Run& run, const json& j)
{
    const std::string body = j.dump(2) + "\n";
    run.files["report.json"] = body;
    out << body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sum-dominant set toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    g.argv = args;
    app.add_option("--workers", g.workers, "worker threads (default: MSTD_WORKERS or all cores)")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--results", g.results, "root of the results directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_flag("--no-save", g.no_save, "print only; write no result files");

    std::string set_text;
    std::uint64_t seed = 1;

    auto* classify_cmd = app.add_subcommand("classify", "sum and difference set sizes of a set");
    classify_cmd->add_option("--set", set_text, "comma-separated integers or a catalog name")->required();

    std::string family;
    std::int64_t cm = 0, cd = 0, ck = 0, cn = 8;
    std::string middle_text;
    auto* construct_cmd = app.add_subcommand("construct", "build a set from a family");
    construct_cmd->add_option("family", family, "nathanson | base | mos")->required();
    construct_cmd->add_option("--m", cm, "nathanson m, base modulus, or middle width");
    construct_cmd->add_option("--d", cd, "nathanson d");
    construct_cmd->add_option("--k", ck, "nathanson k, base digits, or mos padding k");
    construct_cmd->add_option("--n", cn, "mos seed split point");
    construct_cmd->add_option("--set", set_text, "base set or mos seed (default mos_seed)");
    construct_cmd->add_option("--middle", middle_text, "mos middle M, absolute positions");

    unsigned en = 0, en_min = 0, shards = 0;
    bool fix_zero = false, list_sets = false;
    std::string out_path;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "exact label counts over all subsets");
    enumerate_cmd->add_option("--n", en, "largest n")->required();
    enumerate_cmd->add_option("--n-min", en_min, "smallest n (default: n)");
    enumerate_cmd->add_flag("--fix-zero", fix_zero, "only subsets containing 0");
    enumerate_cmd->add_option("--shards", shards, "log2 of the shard count");
    enumerate_cmd->add_flag("--sets", list_sets, "also list the sum-dominant sets of the largest n");
    enumerate_cmd->add_option("--out", out_path, "data file path");

    std::string model_name = "uniform";
    std::uint64_t sn = 100, trials = 1000;
    double sc = 0.5, sdelta = 0.5;
    bool profile = false, joint = false;
    auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo statistics of random subsets");
    sample_cmd->add_option("--model", model_name, "uniform | const | decay")
        ->check(CLI::IsMember({"uniform", "const", "decay"}));
    sample_cmd->add_option("--n", sn, "ambient size");
    sample_cmd->add_option("--c", sc, "probability (const) or scale c (decay)");
    sample_cmd->add_option("--delta", sdelta, "decay exponent");
    sample_cmd->add_option("--trials", trials, "number of sets");
    sample_cmd->add_option("--seed", seed, "master seed");
    sample_cmd->add_flag("--profile", profile, "also write representation profiles");
    sample_cmd->add_flag("--joint", joint, "also write the joint missing-count table");
    sample_cmd->add_option("--out", out_path, "data file path");

    std::string f1_text, f2_text;
    auto* compare_cmd = app.add_subcommand("compare", "compare |s1 A - d1 A| with |s2 A - d2 A|");
    compare_cmd->add_option("--set", set_text)->required();
    compare_cmd->add_option("--f1", f1_text, "s,d")->required();
    compare_cmd->add_option("--f2", f2_text, "s,d")->required();

    unsigned gk = 1;
    auto* gen_cmd = app.add_subcommand("generational", "check cA + cA > cA - cA for c <= k");
    gen_cmd->add_option("--set", set_text)->required();
    gen_cmd->add_option("--k", gk)->required();

    unsigned k_max = 0;
    auto* stab_cmd = app.add_subcommand("stabilize", "linear growth of |kA|");
    stab_cmd->add_option("--set", set_text)->required();
    stab_cmd->add_option("--k-max", k_max, "largest k examined (default 3 * slope + 3)");

    auto* verify_cmd = app.add_subcommand("verify-catalog", "re-check every catalog claim");

    std::string figure_name, budget_name = "desk";
    unsigned nmax = 0;
    std::uint64_t fig_n = 100;
    std::optional<std::uint64_t> fig_trials;
    auto* figure_cmd = app.add_subcommand("figure", "data series for a figure or table");
    figure_cmd->add_option("name", figure_name, "fig1 | fig2 | fig3 | table1")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "table1"}));
    figure_cmd->add_option("--budget", budget_name, "desk | full");
    figure_cmd->add_option("--nmax", nmax, "fig1: largest exactly enumerated n");
    figure_cmd->add_option("--n", fig_n, "fig2: ambient size");
    figure_cmd->add_option("--trials", fig_trials, "sets per point");
    figure_cmd->add_option("--seed", seed, "master seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << report::error_json("usage", "cli", e.what()).dump() << "\n";
        return 2;
    }

    try {
        if (g.workers == 0) g.workers = default_workers();
        const std::string command = app.get_subcommands().front()->get_name();
        Run run(g, command, seed);
        int status = 0;

        if (classify_cmd->parsed()) {
            const IntSet a = set_arg(set_text);
            run.config = {{"set", to_string(a)}};
            emit_json(out, run, report::classification_json(a, classify(a)));
        } else if (construct_cmd->parsed()) {
            IntSet a;
            json rec = {{"family", family}};
            if (family == "nathanson") {
                const NathansonParams p{cm, cd, ck};
                a = nathanson(p);
                rec["params"] = {{"m", cm}, {"d", cd}, {"k", ck}};
            } else if (family == "base") {
                const IntSet base = set_arg(set_text.empty() ? "conway" : set_text);
                const unsigned digits = ck > 0 ? static_cast<unsigned>(ck) : 2;
                const std::int64_t modulus = cm > 0 ? cm : base_expansion_bound(base, digits);
                const auto be = base_expand(base, digits, modulus);
                a = be.set;
                const auto cb = classify(base);
                rec["params"] = {{"set", to_string(base)}, {"k", digits}, {"m", modulus}};
                rec["safety_bound"] = be.safety_bound;
                rec["below_safety_bound"] = be.below_safety_bound;
                rec["base_sum_card_power"] = std::pow(static_cast<double>(cb.sum_card), digits);
                rec["base_diff_card_power"] = std::pow(static_cast<double>(cb.diff_card), digits);
            } else if (family == "mos") {
                const IntSet seed_set = set_arg(set_text.empty() ? "mos_seed" : set_text);
                const IntSet middle = middle_text.empty() ? IntSet{} : parse_intset(middle_text);
                const auto p = MosParams::from_seed(seed_set, cn, ck, cm, middle);
                a = mos_insert(p);
                rec["params"] = {{"seed", to_string(seed_set)}, {"n", cn}, {"k", ck}, {"m", cm},
                                 {"middle", to_string(middle)}};
                rec["p_n"] = is_Pn(a, cn);
            } else {
                throw Error(ErrorKind::parse, "cli", "unknown family '" + family + "'");
            }
            run.config = rec["params"];
            rec["set"] = to_string(a);
            rec["classification"] = report::classification_json(a, classify(a));
            run.files["set.txt"] = to_string(a) + "\n";
            emit_json(out, run, rec);
        } else if (enumerate_cmd->parsed()) {
            const unsigned lo = en_min == 0 ? en : en_min;
            if (lo > en) throw Error(ErrorKind::parameter, "cli", "--n-min exceeds --n");
            std::vector<DensityRecord> records;
            for (unsigned n = lo; n <= en; ++n) records.push_back(enumerate_density(n, fix_zero, {g.workers, default_enumeration_capacity, shards}));
            run.files["data.csv"] = report::density_csv(records);
            if (list_sets) {
                std::string body;
                enumerate_mstd(en, fix_zero, [&](const IntSet& s) { body += to_string(s) + "\n"; });
                run.files["sets.txt"] = body;
            }
            run.config = {{"n_min", lo}, {"n", en}, {"fix_zero", fix_zero}, {"shards", shards}};
            run.out_path = out_path;
            out << run.files["data.csv"];
        } else if (sample_cmd->parsed()) {
            ProbModel model = model_name == "uniform" ? ProbModel::uniform(sn, seed)
                              : model_name == "const" ? ProbModel::constant(sc, sn, seed)
                                                      : ProbModel::decay(sc, sdelta, sn, seed);
            const auto stats = mc_stats(model, trials, {g.workers});
            run.files["data.csv"] = report::sample_csv(model, stats);
            if (joint) run.files["joint_missing.csv"] = report::joint_missing_csv(stats);
            if (profile) {
                const auto prof = mc_rep_profile(model, trials, false, {g.workers});
                run.files["sum_profile.csv"] = report::sum_profile_csv(prof);
                run.files["diff_profile.csv"] = report::diff_profile_csv(prof);
            }
            run.config = {{"model", model_name}, {"n", sn}, {"c", sc}, {"delta", sdelta}, {"trials", trials}};
            run.out_path = out_path;
            out << run.files["data.csv"];
        } else if (compare_cmd->parsed()) {
            const IntSet a = set_arg(set_text);
            run.config = {{"set", to_string(a)}, {"f1", f1_text}, {"f2", f2_text}};
            emit_json(out, run, report::comparison_json(a, compare_linforms(a, form_arg(f1_text), form_arg(f2_text))));
        } else if (gen_cmd->parsed()) {
            const IntSet a = set_arg(set_text);
            run.config = {{"set", to_string(a)}, {"k", gk}};
            emit_json(out, run, report::generational_json(a, gk, is_k_generational(a, gk)));
        } else if (stab_cmd->parsed()) {
            const IntSet a = set_arg(set_text);
            run.config = {{"set", to_string(a)}, {"k_max", k_max}};
            emit_json(out, run, report::stabilization_json(a, stabilization(a, k_max)));
        } else if (verify_cmd->parsed()) {
            json results = json::array();
            std::vector<std::string> failed;
            for (const auto& r : verify_catalog()) {
                results.push_back(report::claim_json(r));
                if (!r.holds) failed.push_back(r.entry + ": " + r.claim + (r.detail.empty() ? "" : " (" + r.detail + ")"));
            }
            emit_json(out, run, results);
            if (!failed.empty()) {
                std::string detail = std::to_string(failed.size()) + " claim(s) failed";
                for (const auto& f : failed) detail += "; " + f;
                err << report::error_json("verification", "catalog", detail).dump() << "\n";
                status = 1;
            }
        } else if (figure_cmd->parsed()) {
            const auto budget = figures::parse_budget(budget_name);
            const bool full = budget == figures::Budget::full;
            if (figure_name == "fig1") {
                figures::Fig1Options o;
                o.nmax = nmax ? nmax : (full ? 27 : 18);
                o.trials = fig_trials.value_or(full ? 10'000'000 : 100'000);
                run.files = figures::fig1(o, budget, seed, g.workers);
                run.config = {{"nmax", o.nmax}, {"trials", o.trials}};
            } else if (figure_name == "fig2") {
                const auto t = fig_trials.value_or(100);
                run.files = figures::fig2(fig_n, t, seed, g.workers);
                run.config = {{"n", fig_n}, {"trials", t}};
            } else if (figure_name == "fig3") {
                figures::Fig3Options o;
                o.trials = fig_trials.value_or(10);
                run.files = figures::fig3(o, seed, g.workers);
                run.config = {{"trials", o.trials}};
            } else {
                const auto t = fig_trials.value_or(10);
                run.files = figures::table1(budget, t, seed, g.workers);
                run.config = {{"trials", t}};
            }
            run.config["budget"] = budget_name;
            out << run.files["data.csv"];
        }
        if (const auto dir = run.persist()) err << "results: " << dir->string() << "\n";
        return status;
    } catch (const Error& e) {
        err << report::error_json(to_string(e.kind()), e.module(), e.what()).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << report::error_json("internal", "cli", e.what()).dump() << "\n";
        return 1;
    }
}

}  // namespace mstd::cli
