#pragma once

// Named axioms as tri-state predicates over total and partial rule tables.
//
// Evaluation is monotone under extension: once a partial rule evaluates
// Violated the result can never recover, and Satisfied persists likewise.
// Every Violated result carries a certificate that replay_certificate can
// confirm against the rule by direct recomputation.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scv/profile_space.hpp"
#include "scv/rules.hpp"

namespace scv {

enum class AxiomId : std::uint8_t {
    Wp,        // weak Pareto (aswf)
    Iia,       // independence of irrelevant alternatives (aswf)
    Ni,        // non-imposition (aswf)
    Dict,      // dictatorial (aswf)
    Antidict,  // anti-dictatorial (aswf)
    Const,     // constant social order (aswf)
    USdf,      // unanimity (sdf)
    Liberal,   // at least two decisive voters (sdf)
    Decisive,  // a specific voter is decisive (sdf)
    M,         // monotonicity (scf)
    Sp,        // strategy-proofness (scf)
    Eff,       // efficiency (scf)
    Anon,      // anonymity (scf)
    Onto,      // every alternative attained (scf)
    DictScf,   // dictatorial (scf)
    UScf,      // tops unanimity (scf)
};

inline Family family_of(AxiomId id) {
    switch (id) {
        case AxiomId::Wp:
        case AxiomId::Iia:
        case AxiomId::Ni:
        case AxiomId::Dict:
        case AxiomId::Antidict:
        case AxiomId::Const: return Family::Aswf;
        case AxiomId::USdf:
        case AxiomId::Liberal:
        case AxiomId::Decisive: return Family::Sdf;
        case AxiomId::M:
        case AxiomId::Sp:
        case AxiomId::Eff:
        case AxiomId::Anon:
        case AxiomId::Onto:
        case AxiomId::DictScf:
        case AxiomId::UScf: return Family::Scf;
    }
    throw std::logic_error("bad axiom id");
}

inline std::string axiom_base_name(AxiomId id) {
    switch (id) {
        case AxiomId::Wp: return "wp";
        case AxiomId::Iia: return "iia";
        case AxiomId::Ni: return "ni";
        case AxiomId::Dict: return "dict";
        case AxiomId::Antidict: return "antidict";
        case AxiomId::Const: return "const";
        case AxiomId::USdf: return "u";
        case AxiomId::Liberal: return "liberal";
        case AxiomId::Decisive: return "decisive";
        case AxiomId::M: return "m";
        case AxiomId::Sp: return "sp";
        case AxiomId::Eff: return "eff";
        case AxiomId::Anon: return "anon";
        case AxiomId::Onto: return "onto";
        case AxiomId::DictScf: return "dict_scf";
        case AxiomId::UScf: return "u";
    }
    throw std::logic_error("bad axiom id");
}

struct Axiom {
    AxiomId id;
    bool negated = false;
    int voter = -1;  // Decisive only

    bool operator==(const Axiom&) const = default;
};

inline std::string axiom_name(const Axiom& ax) {
    return (ax.negated ? "!" : "") + axiom_base_name(ax.id);
}

// Accepted names, lowercase, optionally prefixed with '!' for negation.
// "u" is family-dependent and resolves via the other axioms in the set.
inline const std::vector<std::string>& accepted_axiom_names() {
    static const std::vector<std::string> names = {
        "wp", "iia", "ni", "dict", "antidict", "const", "u", "liberal",
        "m", "sp", "eff", "anon", "onto", "dict_scf"};
    return names;
}

inline std::vector<Axiom> parse_axiom_set(const std::vector<std::string>& raw) {
    struct Entry {
        std::string base;
        bool negated;
    };
    std::vector<Entry> entries;
    for (const auto& token : raw) {
        Entry e{token, false};
        if (!e.base.empty() && e.base[0] == '!') {
            e.negated = true;
            e.base = e.base.substr(1);
        }
        bool known = false;
        for (const auto& name : accepted_axiom_names())
            if (name == e.base) { known = true; break; }
        if (!known) {
            std::string accepted;
            for (const auto& name : accepted_axiom_names())
                accepted += (accepted.empty() ? "" : ", ") + name;
            throw std::invalid_argument("unknown axiom '" + token + "'; accepted: " + accepted +
                                        " (negations spelled !dict etc.)");
        }
        entries.push_back(std::move(e));
    }

    // Resolve the family from unambiguous names, then map "u" onto it.
    std::optional<Family> fam;
    auto claim = [&](Family f, const std::string& name) {
        if (fam && *fam != f)
            throw std::invalid_argument("axiom '" + name + "' belongs to family " + family_name(f) +
                                        " but the set already implies " + family_name(*fam));
        fam = f;
    };
    for (const auto& e : entries) {
        if (e.base == "u") continue;
        if (e.base == "wp" || e.base == "iia" || e.base == "ni" || e.base == "dict" ||
            e.base == "antidict" || e.base == "const")
            claim(Family::Aswf, e.base);
        else if (e.base == "liberal")
            claim(Family::Sdf, e.base);
        else
            claim(Family::Scf, e.base);
    }
    std::vector<Axiom> out;
    for (const auto& e : entries) {
        Axiom ax;
        ax.negated = e.negated;
        if (e.base == "wp") ax.id = AxiomId::Wp;
        else if (e.base == "iia") ax.id = AxiomId::Iia;
        else if (e.base == "ni") ax.id = AxiomId::Ni;
        else if (e.base == "dict") ax.id = AxiomId::Dict;
        else if (e.base == "antidict") ax.id = AxiomId::Antidict;
        else if (e.base == "const") ax.id = AxiomId::Const;
        else if (e.base == "liberal") ax.id = AxiomId::Liberal;
        else if (e.base == "m") ax.id = AxiomId::M;
        else if (e.base == "sp") ax.id = AxiomId::Sp;
        else if (e.base == "eff") ax.id = AxiomId::Eff;
        else if (e.base == "anon") ax.id = AxiomId::Anon;
        else if (e.base == "onto") ax.id = AxiomId::Onto;
        else if (e.base == "dict_scf") ax.id = AxiomId::DictScf;
        else if (e.base == "u") {
            if (!fam)
                throw std::invalid_argument(
                    "'u' is ambiguous on its own; combine it with a family-specific axiom "
                    "(e.g. liberal for sdf, sp for scf)");
            if (*fam == Family::Sdf) ax.id = AxiomId::USdf;
            else if (*fam == Family::Scf) ax.id = AxiomId::UScf;
            else throw std::invalid_argument("'u' does not apply to aswf rules");
        } else {
            throw std::logic_error("unhandled axiom name");
        }
        out.push_back(ax);
    }
    return out;
}

enum class Status : std::uint8_t { Satisfied, Violated, Undetermined };

struct Certificate {
    AxiomId id{};
    bool from_negation = false;  // violation of !X, i.e. X holds
    std::vector<std::uint64_t> profiles;
    std::vector<int> voters;
    std::vector<int> pair_ids;  // unordered pair index, or a*m+b for ordered
    std::vector<int> alts;
    std::vector<int> values;
};

struct AxiomResult {
    Status status = Status::Undetermined;
    std::optional<Certificate> certificate;
    int witness_voter = -1;  // dictator / anti-dictator when satisfied
    int witness_value = -1;  // constant outcome when satisfied
};

namespace detail {

inline AxiomResult satisfied() { return AxiomResult{Status::Satisfied, std::nullopt, -1, -1}; }
inline AxiomResult undetermined() { return AxiomResult{Status::Undetermined, std::nullopt, -1, -1}; }
inline AxiomResult violated(Certificate c) {
    AxiomResult r;
    r.status = Status::Violated;
    r.certificate = std::move(c);
    return r;
}

inline int lowest_bit(std::uint32_t x) { return __builtin_ctz(x); }

}  // namespace detail

// --- aswf axioms -----------------------------------------------------------

inline AxiomResult check_wp(const ProfileSpace& ps, std::span<const int> out) {
    bool pending = false;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            if (ps.unanimous_mask[p]) pending = true;
            continue;
        }
        const std::uint32_t bad = (ps.order_dirs[v] ^ ps.unanimous_dirs[p]) & ps.unanimous_mask[p];
        if (bad) {
            Certificate c;
            c.id = AxiomId::Wp;
            c.profiles = {p};
            c.pair_ids = {detail::lowest_bit(bad)};
            return detail::violated(std::move(c));
        }
    }
    return pending ? detail::undetermined() : detail::satisfied();
}

inline AxiomResult check_iia(const ProfileSpace& ps, std::span<const int> out) {
    const std::size_t patterns = std::size_t{1} << ps.n;
    std::vector<std::int64_t> first(static_cast<std::size_t>(ps.pair_count) * patterns, -1);
    std::vector<std::uint8_t> dir(first.size(), 0);
    bool any_unassigned = false;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            any_unassigned = true;
            continue;
        }
        for (int k = 0; k < ps.pair_count; ++k) {
            const std::size_t slot = static_cast<std::size_t>(k) * patterns + ps.pattern[p * ps.pair_count + k];
            const std::uint8_t d = (ps.order_dirs[v] >> k) & 1u;
            if (first[slot] < 0) {
                first[slot] = static_cast<std::int64_t>(p);
                dir[slot] = d;
            } else if (dir[slot] != d) {
                Certificate c;
                c.id = AxiomId::Iia;
                c.profiles = {static_cast<std::uint64_t>(first[slot]), p};
                c.pair_ids = {k};
                return detail::violated(std::move(c));
            }
        }
    }
    return any_unassigned ? detail::undetermined() : detail::satisfied();
}

inline AxiomResult check_ni(const ProfileSpace& ps, std::span<const int> out) {
    const std::uint32_t all = (1u << ps.pair_count) - 1u;
    std::uint32_t pos_seen = 0, neg_seen = 0;
    bool any_unassigned = false;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            any_unassigned = true;
            continue;
        }
        pos_seen |= ps.order_dirs[v];
        neg_seen |= ~ps.order_dirs[v] & all;
    }
    if (pos_seen == all && neg_seen == all) return detail::satisfied();
    if (any_unassigned) return detail::undetermined();
    Certificate c;
    c.id = AxiomId::Ni;
    for (int k = 0; k < ps.pair_count; ++k) {
        if (!((pos_seen >> k) & 1u)) {
            c.alts = {ps.pairs[k].first, ps.pairs[k].second};
            break;
        }
        if (!((neg_seen >> k) & 1u)) {
            c.alts = {ps.pairs[k].second, ps.pairs[k].first};
            break;
        }
    }
    return detail::violated(std::move(c));
}

namespace detail {

// Shared core of dict / antidict / dict_scf: track which voters are still
// consistent with "outcome always equals target(p, voter)".
template <typename TargetFn>
AxiomResult check_per_voter_identity(const ProfileSpace& ps, std::span<const int> out, AxiomId id,
                                     TargetFn target) {
    std::vector<int> contradiction(ps.n, -1);
    std::uint32_t alive = (ps.n >= 32) ? ~0u : ((1u << ps.n) - 1u);
    bool total = true;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            total = false;
            continue;
        }
        for (int i = 0; i < ps.n; ++i)
            if ((alive >> i) & 1u)
                if (v != target(p, i)) {
                    alive &= ~(1u << i);
                    contradiction[i] = static_cast<int>(p);
                }
        if (!alive) break;
    }
    if (!alive) {
        Certificate c;
        c.id = id;
        for (int i = 0; i < ps.n; ++i) {
            c.voters.push_back(i);
            c.profiles.push_back(static_cast<std::uint64_t>(contradiction[i]));
        }
        return violated(std::move(c));
    }
    if (!total) return undetermined();
    AxiomResult r = satisfied();
    r.witness_voter = lowest_bit(alive);
    return r;
}

}  // namespace detail

inline AxiomResult check_dictatorial(const ProfileSpace& ps, std::span<const int> out) {
    return detail::check_per_voter_identity(ps, out, AxiomId::Dict, [&](std::uint64_t p, int i) {
        return ps.voter_order_index(p, i);
    });
}

inline AxiomResult check_antidictatorial(const ProfileSpace& ps, std::span<const int> out) {
    return detail::check_per_voter_identity(ps, out, AxiomId::Antidict, [&](std::uint64_t p, int i) {
        return ps.reversed_index[ps.voter_order_index(p, i)];
    });
}

inline AxiomResult check_constant(const ProfileSpace& ps, std::span<const int> out) {
    int value = -1;
    std::uint64_t first = 0;
    bool total = true;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            total = false;
            continue;
        }
        if (value < 0) {
            value = v;
            first = p;
        } else if (v != value) {
            Certificate c;
            c.id = AxiomId::Const;
            c.profiles = {first, p};
            return detail::violated(std::move(c));
        }
    }
    if (!total) return detail::undetermined();
    AxiomResult r = detail::satisfied();
    r.witness_value = value;
    return r;
}

// --- sdf axioms ------------------------------------------------------------

inline AxiomResult check_u_sdf(const ProfileSpace& ps, std::span<const int> out,
                               const std::vector<ChoiceRelation>& rels) {
    bool pending = false;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            if (ps.unanimous_mask[p]) pending = true;
            continue;
        }
        const ChoiceRelation& rel = rels[static_cast<std::size_t>(v)];
        for (int k = 0; k < ps.pair_count; ++k) {
            if (!((ps.unanimous_mask[p] >> k) & 1u)) continue;
            const auto [a, b] = ps.pairs[k];
            const bool a_over_b = (ps.unanimous_dirs[p] >> k) & 1u;
            const bool ok = a_over_b ? rel.strictly(a, b) : rel.strictly(b, a);
            if (!ok) {
                Certificate c;
                c.id = AxiomId::USdf;
                c.profiles = {p};
                c.pair_ids = {k};
                return detail::violated(std::move(c));
            }
        }
    }
    return pending ? detail::undetermined() : detail::satisfied();
}

namespace detail {

// Ordered pairs (x, y), x != y, flattened as x*m + y.
inline bool decisive_condition(const ChoiceRelation& rel, Alt x, Alt y, bool strict_component) {
    return strict_component ? rel.strictly(x, y) : rel.relates(x, y);
}

struct AliveKills {
    std::vector<std::uint8_t> alive;   // n * m * m
    std::vector<std::int64_t> killer;  // n * m * m, profile that killed
    bool total = true;
};

inline AliveKills scan_decisive(const ProfileSpace& ps, std::span<const int> out,
                                const std::vector<ChoiceRelation>& rels, bool strict_component) {
    AliveKills st;
    st.alive.assign(static_cast<std::size_t>(ps.n) * ps.m * ps.m, 0);
    st.killer.assign(st.alive.size(), -1);
    for (int i = 0; i < ps.n; ++i)
        for (Alt x = 0; x < ps.m; ++x)
            for (Alt y = 0; y < ps.m; ++y)
                if (x != y) st.alive[(static_cast<std::size_t>(i) * ps.m + x) * ps.m + y] = 1;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            st.total = false;
            continue;
        }
        const ChoiceRelation& rel = rels[static_cast<std::size_t>(v)];
        for (int i = 0; i < ps.n; ++i) {
            const LinearOrder& ord = ps.voter_order(p, i);
            for (Alt x = 0; x < ps.m; ++x)
                for (Alt y = 0; y < ps.m; ++y) {
                    if (x == y) continue;
                    const std::size_t slot = (static_cast<std::size_t>(i) * ps.m + x) * ps.m + y;
                    if (!st.alive[slot]) continue;
                    if (ord.prefers(x, y) != decisive_condition(rel, x, y, strict_component)) {
                        st.alive[slot] = 0;
                        st.killer[slot] = static_cast<std::int64_t>(p);
                    }
                }
        }
    }
    return st;
}

inline bool voter_has_alive_pair(const AliveKills& st, const ProfileSpace& ps, int voter) {
    for (Alt x = 0; x < ps.m; ++x)
        for (Alt y = 0; y < ps.m; ++y)
            if (x != y && st.alive[(static_cast<std::size_t>(voter) * ps.m + x) * ps.m + y]) return true;
    return false;
}

inline void append_kills(Certificate& c, const AliveKills& st, const ProfileSpace& ps, int voter) {
    for (Alt x = 0; x < ps.m; ++x)
        for (Alt y = 0; y < ps.m; ++y) {
            if (x == y) continue;
            const std::size_t slot = (static_cast<std::size_t>(voter) * ps.m + x) * ps.m + y;
            c.voters.push_back(voter);
            c.pair_ids.push_back(x * ps.m + y);
            c.profiles.push_back(static_cast<std::uint64_t>(st.killer[slot]));
        }
}

}  // namespace detail

inline AxiomResult check_liberal(const ProfileSpace& ps, std::span<const int> out,
                                 const std::vector<ChoiceRelation>& rels, bool strict_component = false) {
    const auto st = detail::scan_decisive(ps, out, rels, strict_component);
    int possible = 0;
    for (int i = 0; i < ps.n; ++i)
        if (detail::voter_has_alive_pair(st, ps, i)) ++possible;
    if (possible < 2) {
        Certificate c;
        c.id = AxiomId::Liberal;
        for (int i = 0; i < ps.n; ++i)
            if (!detail::voter_has_alive_pair(st, ps, i)) detail::append_kills(c, st, ps, i);
        return detail::violated(std::move(c));
    }
    return st.total ? detail::satisfied() : detail::undetermined();
}

inline AxiomResult check_decisive(const ProfileSpace& ps, std::span<const int> out,
                                  const std::vector<ChoiceRelation>& rels, int voter,
                                  bool strict_component = false) {
    if (voter < 0 || voter >= ps.n) throw std::invalid_argument("decisive: voter out of range");
    const auto st = detail::scan_decisive(ps, out, rels, strict_component);
    if (!detail::voter_has_alive_pair(st, ps, voter)) {
        Certificate c;
        c.id = AxiomId::Decisive;
        detail::append_kills(c, st, ps, voter);
        return detail::violated(std::move(c));
    }
    return st.total ? detail::satisfied() : detail::undetermined();
}

// --- scf axioms ------------------------------------------------------------

inline AxiomResult check_sp(const ProfileSpace& ps, std::span<const int> out) {
    bool total = true;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            total = false;
            continue;
        }
        for (int i = 0; i < ps.n; ++i) {
            const int cur = ps.voter_pos[p * ps.n + i];
            const LinearOrder& truth = ps.domain.orders[cur];
            for (int q = 0; q < ps.domain.size(); ++q) {
                if (q == cur) continue;
                const std::uint64_t p2 = ps.variant(p, i, q);
                const int v2 = out[p2];
                if (v2 < 0 || v2 == v) continue;
                if (truth.prefers(v2, v)) {
                    Certificate c;
                    c.id = AxiomId::Sp;
                    c.voters = {i};
                    c.profiles = {p};
                    c.values = {q};
                    return detail::violated(std::move(c));
                }
            }
        }
    }
    return total ? detail::satisfied() : detail::undetermined();
}

inline AxiomResult check_m(const ProfileSpace& ps, std::span<const int> out) {
    bool total = true;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            total = false;
            continue;
        }
        for (std::uint64_t q = 0; q < ps.count; ++q) {
            if (q == p || out[q] < 0 || out[q] == v) continue;
            if (ps.weakly_improves(p, q, v)) {
                Certificate c;
                c.id = AxiomId::M;
                c.profiles = {p, q};
                return detail::violated(std::move(c));
            }
        }
    }
    return total ? detail::satisfied() : detail::undetermined();
}

inline AxiomResult check_eff(const ProfileSpace& ps, std::span<const int> out) {
    bool pending = false;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            if (ps.dominated[p]) pending = true;
            continue;
        }
        if ((ps.dominated[p] >> v) & 1u) {
            for (Alt b = 0; b < ps.m; ++b) {
                if (b == v) continue;
                bool dominates = true;
                for (int i = 0; i < ps.n; ++i)
                    if (!ps.voter_order(p, i).prefers(b, v)) { dominates = false; break; }
                if (dominates) {
                    Certificate c;
                    c.id = AxiomId::Eff;
                    c.profiles = {p};
                    c.alts = {b};
                    return detail::violated(std::move(c));
                }
            }
            throw std::logic_error("dominated mask inconsistent");
        }
    }
    return pending ? detail::undetermined() : detail::satisfied();
}

inline AxiomResult check_anon(const ProfileSpace& ps, std::span<const int> out) {
    std::vector<int> orbit_val(ps.count, -1);
    std::vector<std::uint64_t> orbit_first(ps.count, 0);
    bool total = true;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            total = false;
            continue;
        }
        const std::uint64_t r = ps.orbit_rep[p];
        if (orbit_val[r] < 0) {
            orbit_val[r] = v;
            orbit_first[r] = p;
        } else if (orbit_val[r] != v) {
            Certificate c;
            c.id = AxiomId::Anon;
            c.profiles = {orbit_first[r], p};
            return detail::violated(std::move(c));
        }
    }
    return total ? detail::satisfied() : detail::undetermined();
}

inline AxiomResult check_onto(const ProfileSpace& ps, std::span<const int> out) {
    std::uint32_t seen = 0;
    const std::uint32_t all = (1u << ps.m) - 1u;
    bool total = true;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        if (v < 0) {
            total = false;
            continue;
        }
        seen |= 1u << v;
    }
    if (seen == all) return detail::satisfied();
    if (!total) return detail::undetermined();
    Certificate c;
    c.id = AxiomId::Onto;
    c.alts = {detail::lowest_bit(~seen & all)};
    return detail::violated(std::move(c));
}

inline AxiomResult check_dict_scf(const ProfileSpace& ps, std::span<const int> out) {
    return detail::check_per_voter_identity(ps, out, AxiomId::DictScf, [&](std::uint64_t p, int i) {
        return ps.voter_order(p, i).top();
    });
}

inline AxiomResult check_u_scf(const ProfileSpace& ps, std::span<const int> out) {
    bool pending = false;
    for (std::uint64_t p = 0; p < ps.count; ++p) {
        const int v = out[p];
        const int t = ps.shared_top[p];
        if (v < 0) {
            if (t >= 0) pending = true;
            continue;
        }
        if (t >= 0 && v != t) {
            Certificate c;
            c.id = AxiomId::UScf;
            c.profiles = {p};
            return detail::violated(std::move(c));
        }
    }
    return pending ? detail::undetermined() : detail::satisfied();
}

// --- dispatch --------------------------------------------------------------

struct AxiomEvalOptions {
    bool liberal_strict = false;  // use the strict component in decisiveness
};

inline AxiomResult check_axiom_positive(const ProfileSpace& ps, Family family, const Axiom& ax,
                                        std::span<const int> out, const std::vector<ChoiceRelation>* rels,
                                        const AxiomEvalOptions& opts = {}) {
    if (family_of(ax.id) != family)
        throw std::invalid_argument("axiom " + axiom_base_name(ax.id) + " does not apply to " +
                                    family_name(family) + " rules");
    switch (ax.id) {
        case AxiomId::Wp: return check_wp(ps, out);
        case AxiomId::Iia: return check_iia(ps, out);
        case AxiomId::Ni: return check_ni(ps, out);
        case AxiomId::Dict: return check_dictatorial(ps, out);
        case AxiomId::Antidict: return check_antidictatorial(ps, out);
        case AxiomId::Const: return check_constant(ps, out);
        case AxiomId::USdf: return check_u_sdf(ps, out, *rels);
        case AxiomId::Liberal: return check_liberal(ps, out, *rels, opts.liberal_strict);
        case AxiomId::Decisive: return check_decisive(ps, out, *rels, ax.voter, opts.liberal_strict);
        case AxiomId::M: return check_m(ps, out);
        case AxiomId::Sp: return check_sp(ps, out);
        case AxiomId::Eff: return check_eff(ps, out);
        case AxiomId::Anon: return check_anon(ps, out);
        case AxiomId::Onto: return check_onto(ps, out);
        case AxiomId::DictScf: return check_dict_scf(ps, out);
        case AxiomId::UScf: return check_u_scf(ps, out);
    }
    throw std::logic_error("bad axiom id");
}

inline AxiomResult check_axiom(const ProfileSpace& ps, Family family, const Axiom& ax,
                               std::span<const int> out, const std::vector<ChoiceRelation>* rels = nullptr,
                               const AxiomEvalOptions& opts = {}) {
    AxiomResult base = check_axiom_positive(ps, family, ax, out, rels, opts);
    if (!ax.negated) return base;
    switch (base.status) {
        case Status::Undetermined: return detail::undetermined();
        case Status::Violated: return detail::satisfied();
        case Status::Satisfied: {
            Certificate c;
            c.id = ax.id;
            c.from_negation = true;
            if (base.witness_voter >= 0) c.voters = {base.witness_voter};
            if (base.witness_value >= 0) c.values = {base.witness_value};
            return detail::violated(std::move(c));
        }
    }
    throw std::logic_error("bad status");
}

// --- certificate replay ----------------------------------------------------

// Confirms a violation certificate against the rule by direct recomputation,
// without going through the evaluator that produced it.
inline bool replay_certificate(const ProfileSpace& ps, Family family, std::span<const int> out,
                               const Certificate& cert, const std::vector<ChoiceRelation>* rels = nullptr,
                               const AxiomEvalOptions& opts = {}) {
    if (cert.from_negation) {
        // The negated axiom is violated because the base axiom holds.
        const AxiomResult r = check_axiom_positive(ps, family, Axiom{cert.id, false, -1}, out, rels, opts);
        return r.status == Status::Satisfied;
    }
    const auto assigned = [&](std::uint64_t p) { return p < ps.count && out[p] >= 0; };
    switch (cert.id) {
        case AxiomId::Wp: {
            if (cert.profiles.size() != 1 || cert.pair_ids.size() != 1) return false;
            const std::uint64_t p = cert.profiles[0];
            const int k = cert.pair_ids[0];
            if (!assigned(p)) return false;
            const auto [a, b] = ps.pairs[k];
            bool all_ab = true, all_ba = true;
            for (int i = 0; i < ps.n; ++i)
                (ps.voter_order(p, i).prefers(a, b) ? all_ba : all_ab) = false;
            const bool social_ab = (ps.order_dirs[out[p]] >> k) & 1u;
            return (all_ab && !social_ab) || (all_ba && social_ab);
        }
        case AxiomId::Iia: {
            if (cert.profiles.size() != 2 || cert.pair_ids.size() != 1) return false;
            const std::uint64_t p = cert.profiles[0], q = cert.profiles[1];
            const int k = cert.pair_ids[0];
            if (!assigned(p) || !assigned(q)) return false;
            const auto [a, b] = ps.pairs[k];
            for (int i = 0; i < ps.n; ++i)
                if (ps.voter_order(p, i).prefers(a, b) != ps.voter_order(q, i).prefers(a, b)) return false;
            return ((ps.order_dirs[out[p]] >> k) & 1u) != ((ps.order_dirs[out[q]] >> k) & 1u);
        }
        case AxiomId::Ni: {
            if (cert.alts.size() != 2) return false;
            const Alt a = cert.alts[0], b = cert.alts[1];
            for (std::uint64_t p = 0; p < ps.count; ++p)
                if (!assigned(p) || ps.all_orders[out[p]].prefers(a, b)) return false;
            return true;
        }
        case AxiomId::Dict:
        case AxiomId::DictScf:
        case AxiomId::Antidict: {
            if (cert.voters.size() != static_cast<std::size_t>(ps.n) || cert.profiles.size() != cert.voters.size())
                return false;
            std::vector<bool> covered(ps.n, false);
            for (std::size_t j = 0; j < cert.voters.size(); ++j) {
                const int i = cert.voters[j];
                const std::uint64_t p = cert.profiles[j];
                if (i < 0 || i >= ps.n || !assigned(p)) return false;
                int target;
                if (cert.id == AxiomId::Dict) target = ps.voter_order_index(p, i);
                else if (cert.id == AxiomId::Antidict) target = ps.reversed_index[ps.voter_order_index(p, i)];
                else target = ps.voter_order(p, i).top();
                if (out[p] == target) return false;
                covered[i] = true;
            }
            for (bool c : covered)
                if (!c) return false;
            return true;
        }
        case AxiomId::Const: {
            if (cert.profiles.size() != 2) return false;
            const std::uint64_t p = cert.profiles[0], q = cert.profiles[1];
            return assigned(p) && assigned(q) && out[p] != out[q];
        }
        case AxiomId::USdf: {
            if (cert.profiles.size() != 1 || cert.pair_ids.size() != 1 || !rels) return false;
            const std::uint64_t p = cert.profiles[0];
            const int k = cert.pair_ids[0];
            if (!assigned(p)) return false;
            const auto [a, b] = ps.pairs[k];
            bool all_ab = true, all_ba = true;
            for (int i = 0; i < ps.n; ++i)
                (ps.voter_order(p, i).prefers(a, b) ? all_ba : all_ab) = false;
            const ChoiceRelation& rel = (*rels)[static_cast<std::size_t>(out[p])];
            if (all_ab) return !rel.strictly(a, b);
            if (all_ba) return !rel.strictly(b, a);
            return false;
        }
        case AxiomId::Liberal:
        case AxiomId::Decisive: {
            if (!rels || cert.voters.size() != cert.pair_ids.size() ||
                cert.voters.size() != cert.profiles.size())
                return false;
            // Every listed (voter, ordered pair) must genuinely be killed.
            std::vector<std::uint8_t> killed(static_cast<std::size_t>(ps.n) * ps.m * ps.m, 0);
            for (std::size_t j = 0; j < cert.voters.size(); ++j) {
                const int i = cert.voters[j];
                const int op = cert.pair_ids[j];
                const std::uint64_t p = cert.profiles[j];
                const Alt x = op / ps.m, y = op % ps.m;
                if (i < 0 || i >= ps.n || x == y || !assigned(p)) return false;
                const ChoiceRelation& rel = (*rels)[static_cast<std::size_t>(out[p])];
                if (ps.voter_order(p, i).prefers(x, y) ==
                    detail::decisive_condition(rel, x, y, opts.liberal_strict))
                    return false;
                killed[(static_cast<std::size_t>(i) * ps.m + x) * ps.m + y] = 1;
            }
            std::vector<bool> dead(ps.n, true);
            for (int i = 0; i < ps.n; ++i)
                for (Alt x = 0; x < ps.m && dead[i]; ++x)
                    for (Alt y = 0; y < ps.m; ++y)
                        if (x != y && !killed[(static_cast<std::size_t>(i) * ps.m + x) * ps.m + y]) {
                            dead[i] = false;
                            break;
                        }
            if (cert.id == AxiomId::Decisive) {
                // The single targeted voter must be fully dead.
                return !cert.voters.empty() && dead[cert.voters[0]];
            }
            int possible = 0;
            for (int i = 0; i < ps.n; ++i)
                if (!dead[i]) ++possible;
            return possible < 2;
        }
        case AxiomId::Sp: {
            if (cert.voters.size() != 1 || cert.profiles.size() != 1 || cert.values.size() != 1) return false;
            const int i = cert.voters[0];
            const std::uint64_t p = cert.profiles[0];
            const int q = cert.values[0];
            if (i < 0 || i >= ps.n || q < 0 || q >= ps.domain.size() || !assigned(p)) return false;
            if (q == ps.voter_pos[p * ps.n + i]) return false;
            const std::uint64_t p2 = ps.variant(p, i, q);
            if (!assigned(p2)) return false;
            return out[p2] != out[p] && ps.voter_order(p, i).prefers(out[p2], out[p]);
        }
        case AxiomId::M: {
            if (cert.profiles.size() != 2) return false;
            const std::uint64_t p = cert.profiles[0], q = cert.profiles[1];
            if (!assigned(p) || !assigned(q)) return false;
            return out[q] != out[p] && ps.weakly_improves(p, q, out[p]);
        }
        case AxiomId::Eff: {
            if (cert.profiles.size() != 1 || cert.alts.size() != 1) return false;
            const std::uint64_t p = cert.profiles[0];
            const Alt b = cert.alts[0];
            if (!assigned(p) || b == out[p]) return false;
            for (int i = 0; i < ps.n; ++i)
                if (!ps.voter_order(p, i).prefers(b, out[p])) return false;
            return true;
        }
        case AxiomId::Anon: {
            if (cert.profiles.size() != 2) return false;
            const std::uint64_t p = cert.profiles[0], q = cert.profiles[1];
            if (!assigned(p) || !assigned(q) || out[p] == out[q]) return false;
            std::vector<int> sp(ps.n), sq(ps.n);
            for (int i = 0; i < ps.n; ++i) {
                sp[i] = ps.voter_pos[p * ps.n + i];
                sq[i] = ps.voter_pos[q * ps.n + i];
            }
            std::sort(sp.begin(), sp.end());
            std::sort(sq.begin(), sq.end());
            return sp == sq;
        }
        case AxiomId::Onto: {
            if (cert.alts.size() != 1) return false;
            for (std::uint64_t p = 0; p < ps.count; ++p)
                if (!assigned(p) || out[p] == cert.alts[0]) return false;
            return true;
        }
        case AxiomId::UScf: {
            if (cert.profiles.size() != 1) return false;
            const std::uint64_t p = cert.profiles[0];
            if (!assigned(p)) return false;
            const Alt t = ps.voter_order(p, 0).top();
            for (int i = 1; i < ps.n; ++i)
                if (ps.voter_order(p, i).top() != t) return false;
            return out[p] != t;
        }
    }
    return false;
}

}  // namespace scv
