#pragma once

// Total and partial rule tables for the three rule families, plus the
// enumeration of binary relations that generate a choice function.
//
// All tables are dense arrays keyed by profile_index. Outcome entries are:
//   aswf: order_index of the social order (ranges over all m! orders,
//         whatever the voter domain is)
//   scf:  the chosen alternative
//   sdf:  index into enumerate_choice_relations(m)
// Partial tables use -1 for unassigned cells.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scv/orders.hpp"

namespace scv {

enum class Family : std::uint8_t { Aswf, Scf, Sdf };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::Aswf: return "aswf";
        case Family::Scf: return "scf";
        case Family::Sdf: return "sdf";
    }
    throw std::logic_error("bad family");
}

inline Family family_from_name(const std::string& s) {
    if (s == "aswf") return Family::Aswf;
    if (s == "scf") return Family::Scf;
    if (s == "sdf") return Family::Sdf;
    throw std::invalid_argument("unknown rule family: " + s);
}

// Binary relation over m alternatives, bit (a*m + b) meaning a L b.
struct ChoiceRelation {
    int m = 0;
    std::uint32_t bits = 0;

    bool relates(Alt a, Alt b) const { return (bits >> (a * m + b)) & 1u; }

    // Strict component: a L b and not b L a.
    bool strictly(Alt a, Alt b) const { return relates(a, b) && !relates(b, a); }

    bool operator==(const ChoiceRelation&) const = default;
};

// L generates a choice function iff every non-empty subset B has an element
// related to all of B (itself included).
inline bool generates_choice_function(int m, std::uint32_t bits) {
    const ChoiceRelation r{m, bits};
    for (std::uint32_t subset = 1; subset < (1u << m); ++subset) {
        bool has_best = false;
        for (Alt b = 0; b < m && !has_best; ++b) {
            if (!((subset >> b) & 1u)) continue;
            bool dominates = true;
            for (Alt a = 0; a < m && dominates; ++a)
                if (((subset >> a) & 1u) && !r.relates(b, a)) dominates = false;
            has_best = dominates;
        }
        if (!has_best) return false;
    }
    return true;
}

// All valid relations in increasing bitmask order, by filtering the full
// 2^(m*m) space. Kept exhaustive on purpose; only small m is meaningful.
inline std::vector<ChoiceRelation> enumerate_choice_relations(int m) {
    if (m < 1 || m > 4) throw std::invalid_argument("choice relation enumeration supports 1 <= m <= 4");
    std::vector<ChoiceRelation> out;
    const std::uint64_t space = std::uint64_t{1} << (m * m);
    for (std::uint64_t bits = 0; bits < space; ++bits)
        if (generates_choice_function(m, static_cast<std::uint32_t>(bits)))
            out.push_back(ChoiceRelation{m, static_cast<std::uint32_t>(bits)});
    return out;
}

namespace detail {

inline void check_cell(std::uint64_t cell, std::size_t count) {
    if (cell >= count) throw std::invalid_argument("profile index out of range");
}

inline void check_value_range(int value, std::uint64_t upper, const char* what) {
    if (value < 0 || static_cast<std::uint64_t>(value) >= upper)
        throw std::invalid_argument(std::string("outcome out of range for ") + what);
}

}  // namespace detail

template <Family F>
struct RuleTable {
    Domain domain;
    int n = 0;
    std::vector<int> outcomes;  // one entry per profile_index

    static constexpr Family family = F;

    std::uint64_t profile_count() const { return outcomes.size(); }
};

template <Family F>
struct PartialRule {
    Domain domain;
    int n = 0;
    std::vector<int> outcomes;  // -1 = unassigned
    int assigned_count = 0;

    static constexpr Family family = F;

    static PartialRule empty(Domain d, int voters) {
        ProfileCodec codec(d, voters);  // validates and sizes the table
        PartialRule p;
        p.domain = std::move(d);
        p.n = voters;
        p.outcomes.assign(static_cast<std::size_t>(codec.profile_count), -1);
        return p;
    }

    bool is_total() const { return assigned_count == static_cast<int>(outcomes.size()); }

    RuleTable<F> to_total() const {
        if (!is_total()) throw std::invalid_argument("partial rule is not total");
        RuleTable<F> t;
        t.domain = domain;
        t.n = n;
        t.outcomes = outcomes;
        return t;
    }
};

using AswfTable = RuleTable<Family::Aswf>;
using ScfTable = RuleTable<Family::Scf>;
using SdfTable = RuleTable<Family::Sdf>;
using PartialAswf = PartialRule<Family::Aswf>;
using PartialScf = PartialRule<Family::Scf>;
using PartialSdf = PartialRule<Family::Sdf>;

// Upper bound (exclusive) on outcome values for a family over m alternatives.
inline std::uint64_t outcome_space_size(Family f, int m) {
    switch (f) {
        case Family::Aswf: return factorial(m);
        case Family::Scf: return static_cast<std::uint64_t>(m);
        case Family::Sdf: return enumerate_choice_relations(m).size();
    }
    throw std::logic_error("bad family");
}

// Copy-on-extend: one more assignment, input unchanged.
template <Family F>
PartialRule<F> complete(const PartialRule<F>& partial, std::uint64_t cell, int value) {
    detail::check_cell(cell, partial.outcomes.size());
    if (partial.outcomes[cell] != -1) throw std::invalid_argument("cell already assigned");
    detail::check_value_range(value, outcome_space_size(F, partial.domain.m), family_name(F).c_str());
    PartialRule<F> next = partial;
    next.outcomes[cell] = value;
    next.assigned_count += 1;
    return next;
}

// --- canonical witness serialization -------------------------------------
//
// { "family": "aswf"|"scf"|"sdf", "m": int, "n": int,
//   "domain": [order words], "outcomes": [...] }
//
// aswf outcomes are order words, scf outcomes alternative indices, sdf
// outcomes relation bitmasks (bit a*m+b = a L b).

template <Family F>
nlohmann::ordered_json rule_to_json(const RuleTable<F>& rule) {
    nlohmann::ordered_json j;
    j["family"] = family_name(F);
    j["m"] = rule.domain.m;
    j["n"] = rule.n;
    auto& dom = j["domain"] = nlohmann::ordered_json::array();
    for (const auto& o : rule.domain.orders) dom.push_back(o.to_string());
    auto& out = j["outcomes"] = nlohmann::ordered_json::array();
    if constexpr (F == Family::Aswf) {
        const auto all = enumerate_orders(rule.domain.m);
        for (int v : rule.outcomes) out.push_back(all[static_cast<std::size_t>(v)].to_string());
    } else if constexpr (F == Family::Scf) {
        for (int v : rule.outcomes) out.push_back(v);
    } else {
        const auto rels = enumerate_choice_relations(rule.domain.m);
        for (int v : rule.outcomes) out.push_back(rels[static_cast<std::size_t>(v)].bits);
    }
    return j;
}

template <Family F>
std::string rule_signature(const RuleTable<F>& rule) {
    return rule_to_json(rule).dump();
}

template <Family F>
RuleTable<F> rule_from_json(const nlohmann::json& j) {
    if (family_from_name(j.at("family").get<std::string>()) != F)
        throw std::invalid_argument("rule family mismatch");
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    std::vector<LinearOrder> orders;
    for (const auto& w : j.at("domain")) orders.push_back(LinearOrder::from_string(w.get<std::string>()));
    RuleTable<F> rule;
    rule.domain = Domain::of(m, std::move(orders));
    rule.n = n;
    const ProfileCodec codec(rule.domain, n);
    const auto& out = j.at("outcomes");
    if (out.size() != codec.profile_count) throw std::invalid_argument("outcome table has wrong length");
    for (const auto& v : out) {
        if constexpr (F == Family::Aswf) {
            const auto o = LinearOrder::from_string(v.get<std::string>());
            if (o.m != m) throw std::invalid_argument("outcome order has wrong m");
            rule.outcomes.push_back(static_cast<int>(o.order_index()));
        } else if constexpr (F == Family::Scf) {
            const int a = v.get<int>();
            detail::check_value_range(a, static_cast<std::uint64_t>(m), "scf");
            rule.outcomes.push_back(a);
        } else {
            const auto bits = v.get<std::uint32_t>();
            const auto rels = enumerate_choice_relations(m);
            int idx = -1;
            for (std::size_t i = 0; i < rels.size(); ++i)
                if (rels[i].bits == bits) { idx = static_cast<int>(i); break; }
            if (idx < 0) throw std::invalid_argument("sdf outcome does not generate a choice function");
            rule.outcomes.push_back(idx);
        }
    }
    return rule;
}

// --- common constructions --------------------------------------------------

inline AswfTable make_dictatorship(const Domain& domain, int n, int voter) {
    ProfileCodec codec(domain, n);
    AswfTable t;
    t.domain = domain;
    t.n = n;
    t.outcomes.reserve(codec.profile_count);
    for (std::uint64_t p = 0; p < codec.profile_count; ++p) {
        const auto pos = codec.decode_positions(p);
        t.outcomes.push_back(static_cast<int>(domain.orders[pos[voter]].order_index()));
    }
    return t;
}

inline AswfTable make_antidictatorship(const Domain& domain, int n, int voter) {
    ProfileCodec codec(domain, n);
    AswfTable t;
    t.domain = domain;
    t.n = n;
    t.outcomes.reserve(codec.profile_count);
    for (std::uint64_t p = 0; p < codec.profile_count; ++p) {
        const auto pos = codec.decode_positions(p);
        t.outcomes.push_back(static_cast<int>(domain.orders[pos[voter]].reversed().order_index()));
    }
    return t;
}

inline AswfTable make_constant_aswf(const Domain& domain, int n, const LinearOrder& order) {
    ProfileCodec codec(domain, n);
    AswfTable t;
    t.domain = domain;
    t.n = n;
    t.outcomes.assign(codec.profile_count, static_cast<int>(order.order_index()));
    return t;
}

inline ScfTable make_scf_dictatorship(const Domain& domain, int n, int voter) {
    ProfileCodec codec(domain, n);
    ScfTable t;
    t.domain = domain;
    t.n = n;
    t.outcomes.reserve(codec.profile_count);
    for (std::uint64_t p = 0; p < codec.profile_count; ++p) {
        const auto pos = codec.decode_positions(p);
        t.outcomes.push_back(domain.orders[pos[voter]].top());
    }
    return t;
}

inline ScfTable make_constant_scf(const Domain& domain, int n, Alt a) {
    ProfileCodec codec(domain, n);
    ScfTable t;
    t.domain = domain;
    t.n = n;
    t.outcomes.assign(codec.profile_count, a);
    return t;
}

}  // namespace scv
