#pragma once

// Depth-first backtracking over partial rule tables with axiom-driven
// pruning and propagation.
//
// Cells are assigned in increasing profile_index, values in increasing
// outcome order, so sequential runs are fully deterministic and witness
// enumeration order is canonical. Pruning only ever removes branches whose
// extensions are all doomed, so decide/count results are exact; with
// pruning disabled the engine degenerates to generate-and-test over the
// same tree.
//
// Every accepted leaf is re-verified with the standalone axiom evaluators
// before it is counted or emitted.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "scv/axioms.hpp"
#include "scv/profile_space.hpp"
#include "scv/rules.hpp"

namespace scv {

enum class SearchMode : std::uint8_t { Decide, Count, Enumerate };
enum class SearchStatusKind : std::uint8_t { Sat, Unsat, ResourceLimit };
enum class CellPolicy : std::uint8_t { IndexAscending };
enum class ValuePolicy : std::uint8_t { ValueAscending };

struct SearchSpec {
    Family family = Family::Aswf;
    Domain domain;
    int n = 0;
    std::vector<Axiom> axioms;
    SearchMode mode = SearchMode::Decide;
    std::uint64_t enumerate_limit = 0;
    CellPolicy cell_policy = CellPolicy::IndexAscending;
    ValuePolicy value_policy = ValuePolicy::ValueAscending;
    std::uint64_t node_budget = 0;     // 0 = unlimited
    std::uint64_t time_budget_ms = 0;  // 0 = unlimited
    int workers = 1;
    bool pruning = true;
    bool liberal_strict = false;
};

struct SearchWitness {
    Family family = Family::Aswf;
    Domain domain;
    int n = 0;
    std::vector<int> outcomes;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::map<std::string, std::uint64_t> prunes_by_axiom;
    std::uint64_t time_ms = 0;
    int workers = 1;
};

struct SearchResult {
    SearchStatusKind status = SearchStatusKind::Unsat;
    std::uint64_t count = 0;
    std::vector<SearchWitness> witnesses;
    SearchStats stats;
};

namespace detail {

struct EngineShared {
    const ProfileSpace& ps;
    const SearchSpec& spec;
    const std::vector<ChoiceRelation>* rels;  // sdf only
    int value_count;

    // axiom presence, positive / negated
    bool wp_pos = false, iia_pos = false, ni_pos = false, ni_neg = false;
    bool dict_pos = false, dict_neg = false, anti_pos = false, anti_neg = false;
    bool const_pos = false, const_neg = false;
    bool usdf_pos = false, liberal_pos = false;
    bool sp_pos = false, m_pos = false, eff_pos = false, anon_pos = false;
    bool onto_pos = false, onto_neg = false, dictscf_pos = false, dictscf_neg = false;
    bool uscf_pos = false;

    std::vector<std::uint64_t> static_mask;   // per cell, over values
    std::vector<std::uint64_t> iia_dir_mask;  // pair*2+dir -> value mask (aswf)
    std::vector<std::uint64_t> rel_cond_mask; // opair*2+cond -> value mask (sdf)
    std::vector<std::uint64_t> alt_mask;      // alt -> value mask (scf: just 1<<alt)
    std::vector<std::vector<std::uint64_t>> improve_targets;  // cell*m -> bitset over cells (scf M)

    explicit EngineShared(const ProfileSpace& space, const SearchSpec& s,
                          const std::vector<ChoiceRelation>* relations)
        : ps(space), spec(s), rels(relations) {
        const std::uint64_t v = outcome_space_size(s.family, ps.m);
        if (v > 64) throw std::invalid_argument("outcome space too large for the search engine");
        value_count = static_cast<int>(v);

        for (const Axiom& ax : s.axioms) {
            if (family_of(ax.id) != s.family)
                throw std::invalid_argument("axiom " + axiom_base_name(ax.id) + " does not apply to " +
                                            family_name(s.family));
            switch (ax.id) {
                case AxiomId::Wp: if (!ax.negated) wp_pos = true; break;
                case AxiomId::Iia: if (!ax.negated) iia_pos = true; break;
                case AxiomId::Ni: (ax.negated ? ni_neg : ni_pos) = true; break;
                case AxiomId::Dict: (ax.negated ? dict_neg : dict_pos) = true; break;
                case AxiomId::Antidict: (ax.negated ? anti_neg : anti_pos) = true; break;
                case AxiomId::Const: (ax.negated ? const_neg : const_pos) = true; break;
                case AxiomId::USdf: if (!ax.negated) usdf_pos = true; break;
                case AxiomId::Liberal: if (!ax.negated) liberal_pos = true; break;
                case AxiomId::Decisive: break;  // leaf evaluation only
                case AxiomId::Sp: if (!ax.negated) sp_pos = true; break;
                case AxiomId::M: if (!ax.negated) m_pos = true; break;
                case AxiomId::Eff: if (!ax.negated) eff_pos = true; break;
                case AxiomId::Anon: if (!ax.negated) anon_pos = true; break;
                case AxiomId::Onto: (ax.negated ? onto_neg : onto_pos) = true; break;
                case AxiomId::DictScf: (ax.negated ? dictscf_neg : dictscf_pos) = true; break;
                case AxiomId::UScf: if (!ax.negated) uscf_pos = true; break;
            }
        }

        const std::uint64_t full = value_count == 64 ? ~std::uint64_t{0}
                                                     : ((std::uint64_t{1} << value_count) - 1);
        static_mask.assign(ps.count, full);
        if (!s.pruning) return;

        if (s.family == Family::Aswf) {
            iia_dir_mask.assign(static_cast<std::size_t>(ps.pair_count) * 2, 0);
            for (int o = 0; o < value_count; ++o)
                for (int k = 0; k < ps.pair_count; ++k)
                    iia_dir_mask[k * 2 + ((ps.order_dirs[o] >> k) & 1u)] |= std::uint64_t{1} << o;
            if (wp_pos)
                for (std::uint64_t p = 0; p < ps.count; ++p) {
                    std::uint64_t mask = 0;
                    for (int o = 0; o < value_count; ++o)
                        if (((ps.order_dirs[o] ^ ps.unanimous_dirs[p]) & ps.unanimous_mask[p]) == 0)
                            mask |= std::uint64_t{1} << o;
                    static_mask[p] &= mask;
                }
        } else if (s.family == Family::Scf) {
            alt_mask.assign(ps.m, 0);
            for (int a = 0; a < ps.m; ++a) alt_mask[a] = std::uint64_t{1} << a;
            for (std::uint64_t p = 0; p < ps.count; ++p) {
                if (eff_pos) static_mask[p] &= ~static_cast<std::uint64_t>(ps.dominated[p]);
                if (uscf_pos && ps.shared_top[p] >= 0) static_mask[p] &= alt_mask[ps.shared_top[p]];
            }
            if (m_pos) {
                improve_targets.assign(ps.count * ps.m, {});
                const std::size_t words = (ps.count + 63) / 64;
                for (std::uint64_t p = 0; p < ps.count; ++p)
                    for (Alt a = 0; a < ps.m; ++a) {
                        auto& bits = improve_targets[p * ps.m + a];
                        bits.assign(words, 0);
                        for (std::uint64_t q = 0; q < ps.count; ++q)
                            if (q != p && ps.weakly_improves(p, q, a)) bits[q / 64] |= std::uint64_t{1} << (q % 64);
                    }
            }
        } else {
            if (usdf_pos)
                for (std::uint64_t p = 0; p < ps.count; ++p) {
                    std::uint64_t mask = 0;
                    for (int r = 0; r < value_count; ++r) {
                        const ChoiceRelation& rel = (*rels)[static_cast<std::size_t>(r)];
                        bool ok = true;
                        for (int k = 0; k < ps.pair_count && ok; ++k) {
                            if (!((ps.unanimous_mask[p] >> k) & 1u)) continue;
                            const auto [a, b] = ps.pairs[k];
                            const bool a_over_b = (ps.unanimous_dirs[p] >> k) & 1u;
                            ok = a_over_b ? rel.strictly(a, b) : rel.strictly(b, a);
                        }
                        if (ok) mask |= std::uint64_t{1} << r;
                    }
                    static_mask[p] &= mask;
                }
            if (liberal_pos) {
                rel_cond_mask.assign(static_cast<std::size_t>(ps.m) * ps.m * 2, 0);
                for (int r = 0; r < value_count; ++r) {
                    const ChoiceRelation& rel = (*rels)[static_cast<std::size_t>(r)];
                    for (Alt x = 0; x < ps.m; ++x)
                        for (Alt y = 0; y < ps.m; ++y) {
                            if (x == y) continue;
                            const bool cond = decisive_condition(rel, x, y, s.liberal_strict);
                            rel_cond_mask[(x * ps.m + y) * 2 + (cond ? 1 : 0)] |= std::uint64_t{1} << r;
                        }
                }
            }
        }
    }
};

class Engine {
  public:
    struct Undo {
        std::vector<int> iia_slots;
        std::vector<std::pair<int, int>> lib_kills;  // (voter, opair)
        std::vector<std::uint64_t> m_forced_cells;
        std::int64_t orbit_set = -1;
        std::uint32_t dict_killed = 0, anti_killed = 0, dictscf_killed = 0;
        bool const_set = false;
        bool ni_bumped = false;
        bool onto_bumped = false;
    };

    Engine(const EngineShared& sh)
        : sh_(sh), ps_(sh.ps), values_(sh.ps.count, -1) {
        if (ps_.count > 0 && sh_.spec.pruning) {
            if (sh_.iia_pos) iia_learned_.assign(static_cast<std::size_t>(ps_.pair_count) << ps_.n, -1);
            if (sh_.ni_pos || sh_.ni_neg) {
                ni_pos_count_.assign(ps_.pair_count, 0);
                ni_neg_count_.assign(ps_.pair_count, 0);
            }
            if (sh_.onto_pos || sh_.onto_neg) onto_count_.assign(ps_.m, 0);
            if (sh_.m_pos) m_forced_.assign(ps_.count, -1);
            if (sh_.anon_pos) orbit_value_.assign(ps_.count, -1);
            if (sh_.liberal_pos) {
                lib_alive_.assign(static_cast<std::size_t>(ps_.n) * ps_.m * ps_.m, 0);
                lib_alive_count_.assign(ps_.n, 0);
                for (int i = 0; i < ps_.n; ++i)
                    for (Alt x = 0; x < ps_.m; ++x)
                        for (Alt y = 0; y < ps_.m; ++y)
                            if (x != y) {
                                lib_alive_[(static_cast<std::size_t>(i) * ps_.m + x) * ps_.m + y] = 1;
                                ++lib_alive_count_[i];
                            }
            }
        }
        const std::uint32_t all = (ps_.n >= 32) ? ~0u : ((1u << ps_.n) - 1u);
        dict_alive_ = anti_alive_ = dictscf_alive_ = all;
    }

    // Runs the subtree below `cell` (all earlier cells assigned). Returns
    // false when a resource budget was exhausted.
    bool run(std::uint64_t cell, SearchResult& out) {
        if (cell == ps_.count) {
            accept_leaf(out);
            return true;
        }
        std::uint64_t cand = candidates(cell);
        while (cand) {
            const int v = __builtin_ctzll(cand);
            cand &= cand - 1;
            ++stats_.nodes;
            if (budget_exhausted()) return false;
            Undo undo;
            values_[cell] = v;
            const bool ok = sh_.spec.pruning ? apply(cell, v, undo) : true;
            if (ok) {
                if (!run(cell + 1, out)) {
                    revert(cell, v, undo);
                    values_[cell] = -1;
                    return false;
                }
            }
            revert(cell, v, undo);
            values_[cell] = -1;
            if (stop_ || (stop_flag_ && stop_flag_->load(std::memory_order_relaxed))) break;
        }
        return true;
    }

    // Preassigns the root cell for parallel subtree splitting.
    bool preassign_root(int v, Undo& undo) {
        values_[0] = v;
        return sh_.spec.pruning ? apply(0, v, undo) : true;
    }

    std::uint64_t root_candidates() { return candidates(0); }

    SearchStats& stats() { return stats_; }
    void set_stop_flag(std::atomic<bool>* f) { stop_flag_ = f; }
    void set_deadline(std::chrono::steady_clock::time_point d, bool enabled) {
        deadline_ = d;
        deadline_enabled_ = enabled;
    }

  private:
    std::uint64_t candidates(std::uint64_t cell) {
        std::uint64_t cand = sh_.static_mask[cell];
        if (!sh_.spec.pruning) return cand;
        const auto note = [&](const char* axiom, std::uint64_t before, std::uint64_t after) {
            if (before != after)
                stats_.prunes_by_axiom[axiom] +=
                    static_cast<std::uint64_t>(__builtin_popcountll(before) - __builtin_popcountll(after));
        };
        if (sh_.spec.family == Family::Aswf) {
            if (sh_.iia_pos) {
                const std::uint64_t before = cand;
                for (int k = 0; k < ps_.pair_count; ++k) {
                    const int learned =
                        iia_learned_[(static_cast<std::size_t>(k) << ps_.n) | ps_.pattern[cell * ps_.pair_count + k]];
                    if (learned >= 0) cand &= sh_.iia_dir_mask[k * 2 + learned];
                }
                note("iia", before, cand);
            }
            if (sh_.dict_pos) {
                std::uint64_t allow = 0;
                for (int i = 0; i < ps_.n; ++i)
                    if ((dict_alive_ >> i) & 1u) allow |= std::uint64_t{1} << ps_.voter_order_index(cell, i);
                note("dict", cand, cand & allow);
                cand &= allow;
            }
            if (sh_.anti_pos) {
                std::uint64_t allow = 0;
                for (int i = 0; i < ps_.n; ++i)
                    if ((anti_alive_ >> i) & 1u)
                        allow |= std::uint64_t{1} << ps_.reversed_index[ps_.voter_order_index(cell, i)];
                note("antidict", cand, cand & allow);
                cand &= allow;
            }
            if (sh_.const_pos && const_value_ >= 0) {
                note("const", cand, cand & (std::uint64_t{1} << const_value_));
                cand &= std::uint64_t{1} << const_value_;
            }
        } else if (sh_.spec.family == Family::Scf) {
            if (sh_.m_pos && m_forced_[cell] >= 0) {
                note("m", cand, cand & (std::uint64_t{1} << m_forced_[cell]));
                cand &= std::uint64_t{1} << m_forced_[cell];
            }
            if (sh_.anon_pos && orbit_value_[ps_.orbit_rep[cell]] >= 0) {
                note("anon", cand, cand & (std::uint64_t{1} << orbit_value_[ps_.orbit_rep[cell]]));
                cand &= std::uint64_t{1} << orbit_value_[ps_.orbit_rep[cell]];
            }
            if (sh_.dictscf_pos) {
                std::uint64_t allow = 0;
                for (int i = 0; i < ps_.n; ++i)
                    if ((dictscf_alive_ >> i) & 1u) allow |= std::uint64_t{1} << ps_.voter_order(cell, i).top();
                note("dict_scf", cand, cand & allow);
                cand &= allow;
            }
            if (sh_.sp_pos) {
                const std::uint64_t before = cand;
                cand &= sp_allowed(cell);
                note("sp", before, cand);
            }
        } else {
            if (sh_.liberal_pos) {
                const std::uint64_t before = cand;
                for (int i = 0; i < ps_.n && cand; ++i) {
                    if (lib_alive_count_[i] != 1) continue;
                    // the unique surviving pair must stay alive
                    for (Alt x = 0; x < ps_.m; ++x)
                        for (Alt y = 0; y < ps_.m; ++y) {
                            if (x == y || !lib_alive_[(static_cast<std::size_t>(i) * ps_.m + x) * ps_.m + y])
                                continue;
                            const bool pref = ps_.voter_order(cell, i).prefers(x, y);
                            cand &= sh_.rel_cond_mask[(x * ps_.m + y) * 2 + (pref ? 1 : 0)];
                        }
                }
                note("liberal", before, cand);
            }
        }
        return cand;
    }

    // Values compatible with strategy-proofness against all assigned
    // neighbour cells of `cell`.
    std::uint64_t sp_allowed(std::uint64_t cell) {
        std::uint64_t allow = sh_.static_mask[cell];
        for (int i = 0; i < ps_.n && allow; ++i) {
            const int cur = ps_.voter_pos[cell * ps_.n + i];
            const LinearOrder& truth_here = ps_.domain.orders[cur];
            for (int q = 0; q < ps_.domain.size(); ++q) {
                if (q == cur) continue;
                const std::uint64_t other = ps_.variant(cell, i, q);
                const int v2 = values_[other];
                if (v2 < 0) continue;
                const LinearOrder& truth_there = ps_.domain.orders[q];
                for (int v = 0; v < sh_.value_count; ++v) {
                    if (!((allow >> v) & 1u) || v == v2) continue;
                    // truthful at cell, misreport to other / truthful at other,
                    // misreport to cell
                    if (truth_here.prefers(v2, v) || truth_there.prefers(v, v2))
                        allow &= ~(std::uint64_t{1} << v);
                }
            }
        }
        return allow;
    }

    bool apply(std::uint64_t cell, int v, Undo& undo) {
        const Family fam = sh_.spec.family;
        if (fam == Family::Aswf) {
            if (sh_.iia_pos)
                for (int k = 0; k < ps_.pair_count; ++k) {
                    const std::size_t slot =
                        (static_cast<std::size_t>(k) << ps_.n) | ps_.pattern[cell * ps_.pair_count + k];
                    const int d = (ps_.order_dirs[v] >> k) & 1;
                    if (iia_learned_[slot] < 0) {
                        iia_learned_[slot] = static_cast<std::int8_t>(d);
                        undo.iia_slots.push_back(static_cast<int>(slot));
                    } else if (iia_learned_[slot] != d) {
                        ++stats_.prunes_by_axiom["iia"];
                        return false;
                    }
                }
            if (sh_.dict_pos || sh_.dict_neg) {
                for (int i = 0; i < ps_.n; ++i)
                    if (((dict_alive_ >> i) & 1u) && v != ps_.voter_order_index(cell, i)) {
                        dict_alive_ &= ~(1u << i);
                        undo.dict_killed |= 1u << i;
                    }
                if (sh_.dict_pos && !dict_alive_) {
                    ++stats_.prunes_by_axiom["dict"];
                    return false;
                }
            }
            if (sh_.anti_pos || sh_.anti_neg) {
                for (int i = 0; i < ps_.n; ++i)
                    if (((anti_alive_ >> i) & 1u) &&
                        v != ps_.reversed_index[ps_.voter_order_index(cell, i)]) {
                        anti_alive_ &= ~(1u << i);
                        undo.anti_killed |= 1u << i;
                    }
                if (sh_.anti_pos && !anti_alive_) {
                    ++stats_.prunes_by_axiom["antidict"];
                    return false;
                }
            }
            if (sh_.const_pos || sh_.const_neg) {
                if (const_value_ < 0) {
                    const_value_ = v;
                    undo.const_set = true;
                } else if (sh_.const_pos && const_value_ != v) {
                    ++stats_.prunes_by_axiom["const"];
                    return false;
                }
            }
            if (sh_.ni_pos || sh_.ni_neg) {
                bump_ni(v, +1);
                undo.ni_bumped = true;
                if (sh_.ni_neg && ni_complete()) {
                    ++stats_.prunes_by_axiom["!ni"];
                    return false;
                }
            }
        } else if (fam == Family::Scf) {
            if (sh_.m_pos) {
                if (m_forced_[cell] >= 0 && m_forced_[cell] != v) {
                    ++stats_.prunes_by_axiom["m"];
                    return false;
                }
                const auto& targets = sh_.improve_targets[cell * ps_.m + v];
                for (std::size_t w = 0; w < targets.size(); ++w) {
                    std::uint64_t bits = targets[w];
                    while (bits) {
                        const std::uint64_t q = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits));
                        bits &= bits - 1;
                        const int vq = values_[q];
                        if (vq >= 0) {
                            if (vq != v) {
                                ++stats_.prunes_by_axiom["m"];
                                return false;
                            }
                        } else if (m_forced_[q] < 0) {
                            m_forced_[q] = v;
                            undo.m_forced_cells.push_back(q);
                        } else if (m_forced_[q] != v) {
                            ++stats_.prunes_by_axiom["m"];
                            return false;
                        }
                    }
                }
            }
            if (sh_.anon_pos) {
                const std::uint64_t rep = ps_.orbit_rep[cell];
                if (orbit_value_[rep] < 0) {
                    orbit_value_[rep] = v;
                    undo.orbit_set = static_cast<std::int64_t>(rep);
                } else if (orbit_value_[rep] != v) {
                    ++stats_.prunes_by_axiom["anon"];
                    return false;
                }
            }
            if (sh_.dictscf_pos || sh_.dictscf_neg) {
                for (int i = 0; i < ps_.n; ++i)
                    if (((dictscf_alive_ >> i) & 1u) && v != ps_.voter_order(cell, i).top()) {
                        dictscf_alive_ &= ~(1u << i);
                        undo.dictscf_killed |= 1u << i;
                    }
                if (sh_.dictscf_pos && !dictscf_alive_) {
                    ++stats_.prunes_by_axiom["dict_scf"];
                    return false;
                }
            }
            if (sh_.onto_pos || sh_.onto_neg) {
                ++onto_count_[v];
                undo.onto_bumped = true;
                if (sh_.onto_neg && onto_complete()) {
                    ++stats_.prunes_by_axiom["!onto"];
                    return false;
                }
            }
        } else {
            if (sh_.liberal_pos) {
                for (int i = 0; i < ps_.n; ++i) {
                    const LinearOrder& ord = ps_.voter_order(cell, i);
                    const ChoiceRelation& rel = (*sh_.rels)[static_cast<std::size_t>(v)];
                    for (Alt x = 0; x < ps_.m; ++x)
                        for (Alt y = 0; y < ps_.m; ++y) {
                            if (x == y) continue;
                            const std::size_t slot = (static_cast<std::size_t>(i) * ps_.m + x) * ps_.m + y;
                            if (!lib_alive_[slot]) continue;
                            if (ord.prefers(x, y) !=
                                decisive_condition(rel, x, y, sh_.spec.liberal_strict)) {
                                lib_alive_[slot] = 0;
                                --lib_alive_count_[i];
                                undo.lib_kills.emplace_back(i, x * ps_.m + y);
                            }
                        }
                }
                int with_alive = 0;
                for (int i = 0; i < ps_.n; ++i)
                    if (lib_alive_count_[i] > 0) ++with_alive;
                if (with_alive < 2) {
                    ++stats_.prunes_by_axiom["liberal"];
                    return false;
                }
            }
        }
        return true;
    }

    void bump_ni(int v, int delta) {
        for (int k = 0; k < ps_.pair_count; ++k) {
            if ((ps_.order_dirs[v] >> k) & 1u) ni_pos_count_[k] += delta;
            else ni_neg_count_[k] += delta;
        }
    }

    bool ni_complete() const {
        for (int k = 0; k < ps_.pair_count; ++k)
            if (ni_pos_count_[k] == 0 || ni_neg_count_[k] == 0) return false;
        return true;
    }

    bool onto_complete() const {
        for (int a = 0; a < ps_.m; ++a)
            if (onto_count_[a] == 0) return false;
        return true;
    }

    void revert_m(Undo& undo) {
        for (std::uint64_t q : undo.m_forced_cells) m_forced_[q] = -1;
        undo.m_forced_cells.clear();
    }

    void revert_scf(Undo& undo) {
        revert_m(undo);
        if (undo.orbit_set >= 0) {
            orbit_value_[static_cast<std::uint64_t>(undo.orbit_set)] = -1;
            undo.orbit_set = -1;
        }
        dictscf_alive_ |= undo.dictscf_killed;
        undo.dictscf_killed = 0;
    }

    void revert_sdf(Undo& undo) {
        for (const auto& [i, op] : undo.lib_kills) {
            lib_alive_[(static_cast<std::size_t>(i) * ps_.m) * ps_.m + op] = 1;
            ++lib_alive_count_[i];
        }
        undo.lib_kills.clear();
    }

    void revert(std::uint64_t cell, int v, Undo& undo) {
        (void)cell;
        if (!sh_.spec.pruning) return;
        for (int slot : undo.iia_slots) iia_learned_[slot] = -1;
        dict_alive_ |= undo.dict_killed;
        anti_alive_ |= undo.anti_killed;
        if (undo.const_set) const_value_ = -1;
        if (undo.ni_bumped) bump_ni(v, -1);
        if (undo.onto_bumped) --onto_count_[v];
        revert_scf(undo);
        revert_sdf(undo);
    }

    void accept_leaf(SearchResult& out) {
        // full re-verification with the standalone evaluators
        const AxiomEvalOptions opts{sh_.spec.liberal_strict};
        for (const Axiom& ax : sh_.spec.axioms) {
            const AxiomResult r = check_axiom(ps_, sh_.spec.family, ax, values_, sh_.rels, opts);
            if (r.status != Status::Satisfied) return;
        }
        ++out.count;
        out.status = SearchStatusKind::Sat;
        const bool want_witness = (sh_.spec.mode == SearchMode::Decide && out.witnesses.empty()) ||
                                  sh_.spec.mode == SearchMode::Enumerate;
        if (want_witness)
            out.witnesses.push_back(SearchWitness{sh_.spec.family, ps_.domain, ps_.n, values_});
        if (sh_.spec.mode == SearchMode::Decide) stop_ = true;
        if (sh_.spec.mode == SearchMode::Enumerate && out.witnesses.size() >= sh_.spec.enumerate_limit)
            stop_ = true;
        if (stop_ && stop_flag_) stop_flag_->store(true, std::memory_order_relaxed);
    }

    bool budget_exhausted() {
        if (sh_.spec.node_budget && stats_.nodes > sh_.spec.node_budget) return true;
        if (deadline_enabled_ && (stats_.nodes & 2047) == 0 &&
            std::chrono::steady_clock::now() > deadline_)
            return true;
        return false;
    }

    const EngineShared& sh_;
    const ProfileSpace& ps_;
    std::vector<int> values_;

    std::vector<std::int8_t> iia_learned_;
    std::vector<int> ni_pos_count_, ni_neg_count_;
    std::vector<int> onto_count_;
    std::vector<int> m_forced_;
    std::vector<int> orbit_value_;
    std::vector<std::uint8_t> lib_alive_;
    std::vector<int> lib_alive_count_;
    std::uint32_t dict_alive_ = 0, anti_alive_ = 0, dictscf_alive_ = 0;
    int const_value_ = -1;

    bool stop_ = false;
    std::atomic<bool>* stop_flag_ = nullptr;
    std::chrono::steady_clock::time_point deadline_{};
    bool deadline_enabled_ = false;
    SearchStats stats_;
};

}  // namespace detail

inline SearchResult solve(const SearchSpec& spec) {
    if (spec.axioms.empty()) throw std::invalid_argument("axiom set must be non-empty");
    if (spec.mode == SearchMode::Enumerate && spec.enumerate_limit == 0)
        throw std::invalid_argument("enumerate limit must be positive");
    if (spec.workers < 1) throw std::invalid_argument("workers must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const ProfileSpace ps(spec.domain, spec.n);
    std::vector<ChoiceRelation> rels;
    if (spec.family == Family::Sdf) rels = enumerate_choice_relations(spec.domain.m);
    const detail::EngineShared shared(ps, spec, spec.family == Family::Sdf ? &rels : nullptr);

    const auto deadline = t0 + std::chrono::milliseconds(spec.time_budget_ms);
    const bool use_deadline = spec.time_budget_ms > 0;

    SearchResult result;
    bool limited = false;
    int workers_used = 1;

    const bool parallel = spec.workers > 1 && spec.mode != SearchMode::Enumerate && ps.count > 1;
    if (!parallel) {
        detail::Engine engine(shared);
        engine.set_deadline(deadline, use_deadline);
        limited = !engine.run(0, result);
        result.stats = engine.stats();
    } else {
        detail::Engine root(shared);
        std::uint64_t cand = root.root_candidates();
        std::vector<int> branch_values;
        while (cand) {
            branch_values.push_back(__builtin_ctzll(cand));
            cand &= cand - 1;
        }
        workers_used = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(spec.workers),
                                  std::max<std::size_t>(branch_values.size(), 1)));
        std::atomic<bool> stop{false};
        std::vector<SearchResult> partial(branch_values.size());
        std::vector<SearchStats> tstats(branch_values.size());
        std::vector<std::uint8_t> tlimited(branch_values.size(), 0);
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t b = next.fetch_add(1);
                if (b >= branch_values.size()) return;
                detail::Engine engine(shared);
                engine.set_deadline(deadline, use_deadline);
                if (spec.mode == SearchMode::Decide) engine.set_stop_flag(&stop);
                detail::Engine::Undo undo;
                ++engine.stats().nodes;
                if (engine.preassign_root(branch_values[b], undo)) {
                    if (!engine.run(1, partial[b])) tlimited[b] = 1;
                }
                tstats[b] = engine.stats();
            }
        };
        std::vector<std::thread> threads;
        for (int t = 0; t < workers_used; ++t) threads.emplace_back(work);
        for (auto& th : threads) th.join();
        for (std::size_t b = 0; b < branch_values.size(); ++b) {
            result.count += partial[b].count;
            if (partial[b].status == SearchStatusKind::Sat && result.witnesses.empty() &&
                !partial[b].witnesses.empty())
                result.witnesses = partial[b].witnesses;
            if (partial[b].status == SearchStatusKind::Sat) result.status = SearchStatusKind::Sat;
            if (tlimited[b]) limited = true;
            result.stats.nodes += tstats[b].nodes;
            for (const auto& [k, v] : tstats[b].prunes_by_axiom) result.stats.prunes_by_axiom[k] += v;
        }
    }

    if (limited && !(spec.mode == SearchMode::Decide && result.status == SearchStatusKind::Sat))
        result.status = SearchStatusKind::ResourceLimit;
    else if (result.count > 0)
        result.status = SearchStatusKind::Sat;
    else if (result.status != SearchStatusKind::ResourceLimit)
        result.status = SearchStatusKind::Unsat;

    result.stats.workers = workers_used;
    result.stats.time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    return result;
}

inline std::uint64_t count_models(SearchSpec spec) {
    spec.mode = SearchMode::Count;
    const SearchResult r = solve(spec);
    if (r.status == SearchStatusKind::ResourceLimit)
        throw std::runtime_error("search resource budget exhausted");
    return r.count;
}

inline std::vector<SearchWitness> enumerate_models(SearchSpec spec, std::uint64_t limit) {
    spec.mode = SearchMode::Enumerate;
    spec.enumerate_limit = limit;
    spec.workers = 1;  // canonical order
    const SearchResult r = solve(spec);
    if (r.status == SearchStatusKind::ResourceLimit)
        throw std::runtime_error("search resource budget exhausted");
    return r.witnesses;
}

}  // namespace scv
