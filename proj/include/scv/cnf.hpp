#pragma once

// Propositional machinery: CNF formulas with a typed variable legend,
// DIMACS reader/writer, an embedded complete solver, and blocked model
// enumeration over the decision variables.
//
// The solver is deterministic by construction: branching picks the lowest
// indexed unassigned variable and tries false first, and conflict-driven
// clause learning (on by default, switchable off) never changes the
// reported status. Identical input bytes give identical output, model
// included.

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace scv {

struct VarTag {
    enum class Kind : std::uint8_t { AswfPair, ScfOutcome, SetRel, Aux };
    Kind kind = Kind::Aux;
    std::uint64_t profile = 0;  // profile index, or subset mask A for SetRel
    int a = -1;                 // pair first alt / chosen alt / subset mask B
    int b = -1;                 // pair second alt
    std::string note;

    bool operator==(const VarTag&) const = default;
};

struct EncodingMeta {
    std::string kind;  // "aswf", "scf", "setrank" or empty
    int m = 0;
    int n = 0;
    int size = 0;  // setrank ground-set size
    std::vector<std::string> domain_words;
    std::vector<std::string> axiom_names;

    bool operator==(const EncodingMeta&) const = default;
};

struct CnfFormula {
    int nvars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<VarTag> legend;  // one tag per variable when produced by an encoder
    int decision_vars = 0;       // vars 1..decision_vars are decision vars; 0 = all
    EncodingMeta meta;

    int new_var(VarTag tag = {}) {
        legend.push_back(std::move(tag));
        return ++nvars;
    }

    void add_clause(std::vector<int> lits) {
        for (int l : lits) {
            const int v = l < 0 ? -l : l;
            if (v == 0 || v > nvars) throw std::invalid_argument("literal out of range");
        }
        clauses.push_back(std::move(lits));
    }

    int decision_var_count() const { return decision_vars > 0 ? decision_vars : nvars; }
};

// Equality of the logical content; legend and meta ride in comments only.
inline bool same_clauses(const CnfFormula& a, const CnfFormula& b) {
    return a.nvars == b.nvars && a.clauses == b.clauses;
}

// --- DIMACS ----------------------------------------------------------------

inline std::string write_dimacs(const CnfFormula& f) {
    std::string out;
    auto line = [&](const std::string& s) {
        out += s;
        out += '\n';
    };
    if (!f.meta.kind.empty()) {
        line("c meta kind " + f.meta.kind);
        line("c meta m " + std::to_string(f.meta.m));
        line("c meta n " + std::to_string(f.meta.n));
        line("c meta size " + std::to_string(f.meta.size));
        std::string dom;
        for (const auto& w : f.meta.domain_words) dom += (dom.empty() ? "" : ",") + w;
        if (!dom.empty()) line("c meta domain " + dom);
        std::string ax;
        for (const auto& a : f.meta.axiom_names) ax += (ax.empty() ? "" : ",") + a;
        if (!ax.empty()) line("c meta axioms " + ax);
    }
    if (f.decision_vars > 0) line("c meta decision " + std::to_string(f.decision_vars));
    for (std::size_t i = 0; i < f.legend.size(); ++i) {
        const VarTag& t = f.legend[i];
        std::string s = "c var " + std::to_string(i + 1) + " ";
        switch (t.kind) {
            case VarTag::Kind::AswfPair:
                s += "aswf " + std::to_string(t.profile) + " " + std::to_string(t.a) + " " + std::to_string(t.b);
                break;
            case VarTag::Kind::ScfOutcome:
                s += "scf " + std::to_string(t.profile) + " " + std::to_string(t.a);
                break;
            case VarTag::Kind::SetRel:
                s += "setrel " + std::to_string(t.profile) + " " + std::to_string(t.a);
                break;
            case VarTag::Kind::Aux:
                s += "aux" + (t.note.empty() ? "" : " " + t.note);
                break;
        }
        line(s);
    }
    line("p cnf " + std::to_string(f.nvars) + " " + std::to_string(f.clauses.size()));
    for (const auto& c : f.clauses) {
        std::string s;
        for (int l : c) s += std::to_string(l) + " ";
        s += "0";
        line(s);
    }
    return out;
}

inline CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    bool have_header = false;
    std::size_t expected_clauses = 0;
    std::vector<int> current;
    bool clause_open = false;
    std::string text_line;
    int line_no = 0;

    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("dimacs parse error at line " + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(in, text_line)) {
        ++line_no;
        if (!text_line.empty() && text_line.back() == '\r') text_line.pop_back();
        if (text_line.empty()) continue;
        std::istringstream ls(text_line);
        std::string tok;
        ls >> tok;
        if (tok.empty()) continue;
        if (tok == "c") {
            std::string what;
            ls >> what;
            if (what == "meta") {
                std::string key, value;
                ls >> key;
                std::getline(ls, value);
                if (!value.empty() && value[0] == ' ') value = value.substr(1);
                const auto to_int = [](const std::string& s) {
                    try {
                        return std::stoi(s);
                    } catch (const std::exception&) {
                        return 0;  // comments are best effort
}
                };
                if (key == "kind") f.meta.kind = value;
                else if (key == "m") f.meta.m = to_int(value);
                else if (key == "n") f.meta.n = to_int(value);
                else if (key == "size") f.meta.size = to_int(value);
                else if (key == "decision") f.decision_vars = to_int(value);
                else if (key == "domain" || key == "axioms") {
                    std::vector<std::string> items;
                    std::string item;
                    std::istringstream vs(value);
                    while (std::getline(vs, item, ','))
                        if (!item.empty()) items.push_back(item);
                    (key == "domain" ? f.meta.domain_words : f.meta.axiom_names) = std::move(items);
                }
            } else if (what == "var") {
                long id = 0;
                std::string kind;
                if (!(ls >> id >> kind)) continue;
                VarTag t;
                if (kind == "aswf") {
                    t.kind = VarTag::Kind::AswfPair;
                    ls >> t.profile >> t.a >> t.b;
                } else if (kind == "scf") {
                    t.kind = VarTag::Kind::ScfOutcome;
                    ls >> t.profile >> t.a;
                } else if (kind == "setrel") {
                    t.kind = VarTag::Kind::SetRel;
                    ls >> t.profile >> t.a;
                } else {
                    t.kind = VarTag::Kind::Aux;
                    std::getline(ls, t.note);
                    if (!t.note.empty() && t.note[0] == ' ') t.note = t.note.substr(1);
                }
                if (id >= 1) {
                    if (f.legend.size() < static_cast<std::size_t>(id)) f.legend.resize(static_cast<std::size_t>(id));
                    f.legend[static_cast<std::size_t>(id) - 1] = std::move(t);
                }
            }
            continue;
        }
        if (tok == "p") {
            if (have_header) fail("duplicate header");
            std::string fmt;
            long vars = -1, cls = -1;
            if (!(ls >> fmt >> vars >> cls) || fmt != "cnf" || vars < 0 || cls < 0) fail("malformed header");
            f.nvars = static_cast<int>(vars);
            expected_clauses = static_cast<std::size_t>(cls);
            have_header = true;
            continue;
        }
        if (!have_header) fail("clause before header");
        // clause literals, 0-terminated, may span lines
        std::istringstream body(text_line);
        long lit;
        while (body >> lit) {
            if (lit == 0) {
                f.clauses.push_back(current);
                current.clear();
                clause_open = false;
            } else {
                const long v = lit < 0 ? -lit : lit;
                if (v > f.nvars) fail("literal " + std::to_string(lit) + " out of range");
                current.push_back(static_cast<int>(lit));
                clause_open = true;
            }
        }
        if (!body.eof()) fail("non-integer literal token");
    }
    ++line_no;
    if (!have_header) fail("missing header");
    if (clause_open) fail("unterminated clause at end of input");
    if (f.clauses.size() != expected_clauses)
        fail("header announced " + std::to_string(expected_clauses) + " clauses, found " +
             std::to_string(f.clauses.size()));
    if (!f.legend.empty()) f.legend.resize(static_cast<std::size_t>(f.nvars));
    return f;
}

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

// --- solver ----------------------------------------------------------------

enum class SolveStatus : std::uint8_t { Sat, Unsat, Limit };

struct SolverOptions {
    bool learning = true;
    std::uint64_t conflict_budget = 0;  // 0 = unlimited
};

struct SolveStats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t propagations = 0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    std::vector<std::uint8_t> model;  // value of var v at model[v-1], Sat only
    SolveStats stats;
};

namespace detail {

class CdclSolver {
  public:
    CdclSolver(const CnfFormula& f, const SolverOptions& opts) : opts_(opts), nvars_(f.nvars) {
        assigns_.assign(nvars_, -1);
        level_.assign(nvars_, 0);
        reason_.assign(nvars_, -1);
        seen_.assign(nvars_, 0);
        watches_.assign(2 * static_cast<std::size_t>(nvars_) + 2, {});
        trail_.reserve(nvars_);
        for (const auto& c : f.clauses)
            if (!add_original(c)) {
                contradiction_ = true;
                break;
            }
    }

    SolveResult solve() {
        SolveResult res;
        if (contradiction_) {
            res.status = SolveStatus::Unsat;
            res.stats = stats_;
            return res;
        }
        for (;;) {
            const int confl = propagate();
            if (confl >= 0) {
                ++stats_.conflicts;
                if (opts_.conflict_budget && stats_.conflicts > opts_.conflict_budget) {
                    res.status = SolveStatus::Limit;
                    res.stats = stats_;
                    return res;
                }
                if (opts_.learning) {
                    if (current_level() == 0) {
                        res.status = SolveStatus::Unsat;
                        res.stats = stats_;
                        return res;
                    }
                    analyze_and_jump(confl);
                } else {
                    if (!dpll_flip()) {
                        res.status = SolveStatus::Unsat;
                        res.stats = stats_;
                        return res;
                    }
                }
            } else {
                if (static_cast<int>(trail_.size()) == nvars_) {
                    res.status = SolveStatus::Sat;
                    res.model.resize(nvars_);
                    for (int v = 0; v < nvars_; ++v) res.model[v] = static_cast<std::uint8_t>(assigns_[v]);
                    res.stats = stats_;
                    return res;
                }
                decide();
            }
        }
    }

  private:
    struct Clause {
        std::vector<int> lits;  // internal literals: var*2 (pos) / var*2+1 (neg)
    };

    static int internal(int dimacs_lit) {
        const int v = dimacs_lit < 0 ? -dimacs_lit : dimacs_lit;
        return (v - 1) * 2 + (dimacs_lit < 0 ? 1 : 0);
    }
    static int lit_var(int l) { return l >> 1; }
    static int lit_neg(int l) { return l ^ 1; }

    int value(int l) const {
        const int a = assigns_[lit_var(l)];
        if (a < 0) return -1;
        return (a ^ (l & 1)) & 1;  // 1 = true under current assignment
    }

    int current_level() const { return static_cast<int>(trail_lim_.size()); }

    void enqueue(int l, int reason) {
        const int v = lit_var(l);
        assigns_[v] = static_cast<std::int8_t>(((l & 1) ^ 1));
        level_[v] = current_level();
        reason_[v] = reason;
        trail_.push_back(l);
    }

    bool add_original(const std::vector<int>& dimacs) {
        std::vector<int> lits;
        lits.reserve(dimacs.size());
        for (int dl : dimacs) lits.push_back(internal(dl));
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 1; i < lits.size(); ++i)
            if (lits[i] == lit_neg(lits[i - 1])) return true;  // tautology
        if (lits.empty()) return false;
        if (lits.size() == 1) {
            if (value(lits[0]) == 0) return false;
            if (value(lits[0]) == -1) enqueue(lits[0], -1);
            return true;
        }
        attach(std::move(lits));
        return true;
    }

    void attach(std::vector<int> lits) {
        const int idx = static_cast<int>(clauses_.size());
        watches_[lits[0]].push_back(idx);
        watches_[lits[1]].push_back(idx);
        clauses_.push_back(Clause{std::move(lits)});
    }

    // Returns the index of a conflicting clause, or -1.
    int propagate() {
        while (qhead_ < trail_.size()) {
            const int l = trail_[qhead_++];
            ++stats_.propagations;
            const int fl = lit_neg(l);
            auto& ws = watches_[fl];
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                const int ci = ws[i++];
                Clause& c = clauses_[ci];
                if (c.lits[0] == fl) std::swap(c.lits[0], c.lits[1]);
                const int first = c.lits[0];
                if (value(first) == 1) {
                    ws[j++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.lits.size(); ++k) {
                    if (value(c.lits[k]) != 0) {
                        std::swap(c.lits[1], c.lits[k]);
                        watches_[c.lits[1]].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = ci;
                if (value(first) == 0) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return ci;
                }
                enqueue(first, ci);
            }
            ws.resize(j);
        }
        return -1;
    }

    void decide() {
        // Callers guarantee an unassigned variable exists; all variables below
        // next_var_ are assigned (restored on backtrack).
        while (assigns_[next_var_] >= 0) ++next_var_;
        ++stats_.decisions;
        trail_lim_.push_back(trail_.size());
        var_hint_.push_back(next_var_);
        enqueue(next_var_ * 2 + 1, -1);  // false first
    }

    void backtrack(int target_level) {
        if (current_level() <= target_level) return;
        const std::size_t bound = trail_lim_[target_level];
        for (std::size_t k = trail_.size(); k > bound; --k) {
            const int v = lit_var(trail_[k - 1]);
            assigns_[v] = -1;
            reason_[v] = -1;
        }
        trail_.resize(bound);
        qhead_ = bound;
        next_var_ = var_hint_[target_level];
        trail_lim_.resize(target_level);
        var_hint_.resize(target_level);
        flips_.resize(std::min(flips_.size(), static_cast<std::size_t>(target_level)));
    }

    void analyze_and_jump(int confl) {
        std::vector<int> learnt{0};
        int counter = 0;
        int p = -1;
        std::size_t index = trail_.size();
        int ci = confl;
        do {
            const Clause& c = clauses_[ci];
            for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
                const int q = c.lits[k];
                const int v = lit_var(q);
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    if (level_[v] == current_level()) ++counter;
                    else learnt.push_back(q);
                }
            }
            while (!seen_[lit_var(trail_[index - 1])]) --index;
            p = trail_[--index];
            const int v = lit_var(p);
            ci = reason_[v];
            seen_[v] = 0;
            --counter;
        } while (counter > 0);
        learnt[0] = lit_neg(p);
        for (std::size_t k = 1; k < learnt.size(); ++k) seen_[lit_var(learnt[k])] = 0;

        int bj = 0;
        std::size_t max_at = 1;
        for (std::size_t k = 1; k < learnt.size(); ++k)
            if (level_[lit_var(learnt[k])] > bj) {
                bj = level_[lit_var(learnt[k])];
                max_at = k;
            }
        backtrack(bj);
        if (learnt.size() == 1) {
            enqueue(learnt[0], -1);
        } else {
            std::swap(learnt[1], learnt[max_at]);
            const int idx = static_cast<int>(clauses_.size());
            attach(std::move(learnt));
            enqueue(clauses_[idx].lits[0], idx);
        }
    }

    // Chronological flip for the learning-off mode. Returns false when the
    // whole tree is exhausted.
    bool dpll_flip() {
        while (current_level() > 0) {
            const int lvl = current_level();
            const int decision = trail_[trail_lim_[lvl - 1]];
            const bool flipped = flips_.size() >= static_cast<std::size_t>(lvl) && flips_[lvl - 1];
            backtrack(lvl - 1);
            if (!flipped) {
                trail_lim_.push_back(trail_.size());
                var_hint_.push_back(next_var_);
                flips_.resize(trail_lim_.size(), false);
                flips_[trail_lim_.size() - 1] = true;
                enqueue(lit_neg(decision), -1);
                return true;
            }
        }
        return false;
    }

    SolverOptions opts_;
    int nvars_;
    bool contradiction_ = false;
    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<std::int8_t> assigns_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<std::uint8_t> seen_;
    std::vector<int> trail_;
    std::vector<std::size_t> trail_lim_;
    std::vector<int> var_hint_;       // next_var_ snapshot per level
    std::vector<bool> flips_;         // learning-off: has this level been flipped
    std::size_t qhead_ = 0;
    int next_var_ = 0;
    SolveStats stats_;
};

}  // namespace detail

inline SolveResult solve_cnf(const CnfFormula& f, const SolverOptions& opts = {}) {
    detail::CdclSolver solver(f, opts);
    return solver.solve();
}

inline bool model_satisfies(const CnfFormula& f, const std::vector<std::uint8_t>& model) {
    if (static_cast<int>(model.size()) < f.nvars) return false;
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int l : c) {
            const int v = l < 0 ? -l : l;
            if ((l > 0) == (model[v - 1] != 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

// First clause the model falsifies, or -1.
inline std::int64_t first_falsified_clause(const CnfFormula& f, const std::vector<std::uint8_t>& model) {
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        bool sat = false;
        for (int l : f.clauses[i]) {
            const int v = l < 0 ? -l : l;
            if ((l > 0) == (model[v - 1] != 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) return static_cast<std::int64_t>(i);
    }
    return -1;
}

struct ModelCountResult {
    SolveStatus status = SolveStatus::Sat;  // Limit when a budget or cap was hit
    std::uint64_t count = 0;
    std::vector<std::vector<std::uint8_t>> models;  // decision-var slices, when kept
};

// Exact model count over the decision variables via blocking clauses.
inline ModelCountResult count_models_blocked(const CnfFormula& f, std::uint64_t max_models = 0,
                                             bool keep_models = false, const SolverOptions& opts = {}) {
    CnfFormula work = f;
    ModelCountResult res;
    const int dvars = f.decision_var_count();
    for (;;) {
        const SolveResult r = solve_cnf(work, opts);
        if (r.status == SolveStatus::Limit) {
            res.status = SolveStatus::Limit;
            return res;
        }
        if (r.status == SolveStatus::Unsat) return res;
        ++res.count;
        std::vector<std::uint8_t> slice(r.model.begin(), r.model.begin() + dvars);
        if (keep_models) res.models.push_back(slice);
        if (max_models && res.count >= max_models) {
            res.status = SolveStatus::Limit;
            return res;
        }
        std::vector<int> block;
        block.reserve(static_cast<std::size_t>(dvars));
        for (int v = 1; v <= dvars; ++v) block.push_back(slice[v - 1] ? -v : v);
        if (block.empty()) return res;  // zero decision vars: a single model
        work.add_clause(std::move(block));
    }
}

// Parses an external model file: integers in DIMACS polarity convention,
// optional "v" line prefixes and an optional trailing 0. "s ..." status
// lines are ignored. Unlisted variables default to false.
inline std::vector<std::uint8_t> parse_model_text(std::istream& in, int nvars) {
    std::vector<std::uint8_t> model(static_cast<std::size_t>(nvars), 0);
    std::string tok;
    while (in >> tok) {
        if (tok == "v" || tok == "V") continue;
        if (tok == "s" || tok == "S") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        long lit;
        try {
            lit = std::stol(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("model file: non-integer token '" + tok + "'");
        }
        if (lit == 0) continue;
        const long v = lit < 0 ? -lit : lit;
        if (v > nvars)
            throw std::invalid_argument("model file: variable " + std::to_string(v) + " out of range");
        model[static_cast<std::size_t>(v) - 1] = lit > 0 ? 1 : 0;
    }
    return model;
}

}  // namespace scv
