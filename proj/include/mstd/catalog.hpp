#pragma once

// Named sets from the literature, each tagged with the property it is
// claimed to have so the claims can be re-verified mechanically.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mstd/classify.hpp"
#include "mstd/genlin.hpp"
#include "mstd/intset.hpp"

namespace mstd {

enum class ClaimKind {
    linform_greater,  // |greater A| > |lesser A|
    k_generational,
    pn_set,           // P_n with the given order
    fringe_of,        // the lower/upper part of another entry split at `index`
};

struct Claim {
    ClaimKind kind = ClaimKind::linform_greater;
    LinForm greater{2, 0};
    LinForm lesser{1, 1};
    unsigned level = 0;       // k for k_generational; order for pn_set
    std::int64_t index = 0;   // n for pn_set; split point for fringe_of
    std::string parent;       // fringe_of
    bool lower_part = true;   // fringe_of

    std::string describe() const;
};

struct CatalogEntry {
    IntSet set;
    std::string source;
    std::vector<Claim> claims;
};

using Catalog = std::map<std::string, CatalogEntry>;

inline std::string form_text(LinForm f)
{
    auto term = [](unsigned c) { return c == 1 ? std::string("A") : std::to_string(c) + "A"; };
    std::string out;
    if (f.s > 0) out = term(f.s);
    if (f.d > 0) out += "-" + term(f.d);
    return out;
}

inline std::string Claim::describe() const
{
    switch (kind) {
    case ClaimKind::linform_greater: return "|" + form_text(greater) + "| > |" + form_text(lesser) + "|";
    case ClaimKind::k_generational: return std::to_string(level) + "-generational";
    case ClaimKind::pn_set:
        return "P_" + std::to_string(index) + (level == 4 ? "^4" : "") + " set";
    case ClaimKind::fringe_of:
        return std::string(lower_part ? "lower" : "upper") + " part of " + parent + " split at " + std::to_string(index);
    }
    return "?";
}

namespace detail {

inline Claim greater_claim(LinForm g, LinForm l)
{
    Claim c;
    c.greater = g;
    c.lesser = l;
    return c;
}

inline Claim sum_dominant_claim() { return greater_claim({2, 0}, {1, 1}); }

inline Claim generational_claim(unsigned k)
{
    Claim c;
    c.kind = ClaimKind::k_generational;
    c.level = k;
    return c;
}

inline Claim pn_claim(std::int64_t n, unsigned order)
{
    Claim c;
    c.kind = ClaimKind::pn_set;
    c.index = n;
    c.level = order;
    return c;
}

inline Claim fringe_claim(std::string parent, std::int64_t split, bool lower)
{
    Claim c;
    c.kind = ClaimKind::fringe_of;
    c.parent = std::move(parent);
    c.index = split;
    c.lower_part = lower;
    return c;
}

}  // namespace detail

inline Catalog catalog()
{
    using detail::greater_claim;
    Catalog cat;
    const auto mstd = detail::sum_dominant_claim();

    cat["conway"] = {{0, 2, 3, 4, 7, 11, 12, 14}, "Conway, 1960s", {mstd}};
    cat["marica"] = {{0, 1, 2, 4, 7, 8, 12, 14, 15}, "Marica 1969", {mstd}};
    cat["freiman_pigarev"] = {{0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17, 21, 24, 25, 26, 28, 29},
                              "Freiman and Pigarev 1973",
                              {mstd}};
    cat["mo_set"] = {{0, 2, 3, 7, 8, 9, 10, 11, 12, 13, 14, 16, 19, 20, 21}, "Martin and O'Bryant fringe set L u U", {mstd}};
    cat["mo_lower"] = {{0, 2, 3, 7, 8, 9, 10}, "Martin and O'Bryant fringe L", {detail::fringe_claim("mo_set", 11, true)}};
    cat["mo_upper"] = {{11, 12, 13, 14, 16, 19, 20, 21},
                       "Martin and O'Bryant fringe U",
                       {detail::fringe_claim("mo_set", 11, false)}};
    cat["mos_seed"] = {{0, 1, 2, 4, 7, 8, 12, 14, 15},
                       "Miller, Orosz and Scheinerman seed (n = 8)",
                       {mstd, detail::pn_claim(8, 2)}};
    // Printed out of order with 27, 28, 31 after 34; stored as a set.
    cat["mpr_seed"] = {{0, 1, 3, 4, 7, 26, 29, 30, 32, 33, 34, 27, 28, 31, 53, 56, 57, 59, 60, 61},
                       "Miller, Pegado and Robinson seed (n = 31)",
                       {greater_claim({4, 0}, {2, 2}), detail::pn_claim(31, 4)}};
    cat["three_fold"] = {{0, 1, 2, 3, 7, 11, 17, 21, 22, 24, 25, 28, 29, 30, 31, 33, 44, 45, 48, 49},
                         "brute-force |3A| > |2A-A| example",
                         {greater_claim({3, 0}, {2, 1})}};
    cat["ilmz_1"] = {{0, 1, 3, 4, 5, 9, 33, 34, 35, 50, 54, 55, 56, 58, 59, 60},
                     "Iyer, Lazarev, Miller and Zhang example 1",
                     {greater_claim({4, 0}, {3, 1})}};
    cat["ilmz_2gen"] = {{0, 1, 3, 4, 7, 26, 27, 29, 30, 33, 37, 38, 40, 41, 42, 43, 46, 49, 50, 52, 53, 54, 72, 75, 76,
                         78, 79, 80},
                        "Iyer, Lazarev, Miller and Zhang example 2",
                        {detail::generational_claim(2)}};
    cat["ilmz_3"] = {{0, 1, 3, 4, 5, 6, 11, 50, 51, 53, 54, 55, 56, 61, 97, 132, 137, 138, 140, 142, 143, 144, 182, 187,
                      188, 189, 190, 192, 193, 194},
                     "Iyer, Lazarev, Miller and Zhang example 3",
                     {greater_claim({4, 1}, {5, 0}), greater_claim({4, 1}, {3, 2})}};
    return cat;
}

struct ClaimResult {
    std::string entry;
    std::string claim;
    bool holds = false;
    std::string detail;
};

inline ClaimResult verify_claim(const Catalog& cat, const std::string& name, const Claim& claim)
{
    const IntSet& a = cat.at(name).set;
    ClaimResult r;
    r.entry = name;
    r.claim = claim.describe();
    switch (claim.kind) {
    case ClaimKind::linform_greater: {
        const auto cmp = compare_linforms(a, claim.greater, claim.lesser);
        r.holds = cmp.order() > 0;
        r.detail = std::to_string(cmp.first_card) + " vs " + std::to_string(cmp.second_card);
        break;
    }
    case ClaimKind::k_generational: {
        const auto gen = is_k_generational(a, claim.level);
        r.holds = gen.holds;
        for (std::size_t c = 0; c < gen.excess.size(); ++c)
            r.detail += (c ? "," : "") + std::string("c=") + std::to_string(c + 1) + ":" + std::to_string(gen.excess[c]);
        break;
    }
    case ClaimKind::pn_set:
        r.holds = is_Pn(a, claim.index, static_cast<int>(claim.level));
        break;
    case ClaimKind::fringe_of: {
        const auto [lower, upper] = fringe_split(cat.at(claim.parent).set, claim.index);
        r.holds = (claim.lower_part ? lower : upper) == a;
        break;
    }
    }
    return r;
}

/// Every claim of every entry, in name order.
inline std::vector<ClaimResult> verify_catalog(const Catalog& cat = catalog())
{
    std::vector<ClaimResult> out;
    for (const auto& [name, entry] : cat)
        for (const auto& claim : entry.claims) out.push_back(verify_claim(cat, name, claim));
    return out;
}

}  // namespace mstd
