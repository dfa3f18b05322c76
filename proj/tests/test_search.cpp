#include "catch_amalgamated.hpp"

#include "scv/search.hpp"

using namespace scv;

namespace {

SearchSpec aswf_spec(const Domain& d, int n, std::vector<Axiom> axioms, SearchMode mode = SearchMode::Count) {
    SearchSpec s;
    s.family = Family::Aswf;
    s.domain = d;
    s.n = n;
    s.axioms = std::move(axioms);
    s.mode = mode;
    return s;
}

// Generate-and-test over every total rule of the spec's family.
std::uint64_t brute_count(const SearchSpec& spec) {
    const ProfileSpace ps(spec.domain, spec.n);
    std::vector<ChoiceRelation> rels;
    if (spec.family == Family::Sdf) rels = enumerate_choice_relations(spec.domain.m);
    const int values = static_cast<int>(outcome_space_size(spec.family, spec.domain.m));
    std::vector<int> out(ps.count, 0);
    std::uint64_t count = 0;
    const AxiomEvalOptions opts{spec.liberal_strict};
    for (;;) {
        bool ok = true;
        for (const Axiom& ax : spec.axioms)
            if (check_axiom(ps, spec.family, ax, out, &rels, opts).status != Status::Satisfied) {
                ok = false;
                break;
            }
        if (ok) ++count;
        int i = static_cast<int>(ps.count) - 1;
        while (i >= 0 && out[i] == values - 1) out[i--] = 0;
        if (i < 0) break;
        ++out[i];
    }
    return count;
}

}  // namespace

TEST_CASE("arrow base cases through the search engine") {
    const auto full = Domain::full(3);

    auto spec = aswf_spec(full, 2, parse_axiom_set({"wp", "iia", "!dict"}), SearchMode::Decide);
    const auto r = solve(spec);
    CHECK(r.status == SearchStatusKind::Unsat);

    auto spec1 = aswf_spec(full, 1, parse_axiom_set({"wp", "iia", "!dict"}), SearchMode::Decide);
    CHECK(solve(spec1).status == SearchStatusKind::Unsat);

    CHECK(count_models(aswf_spec(full, 2, parse_axiom_set({"wp", "iia"}))) == 2);
    CHECK(count_models(aswf_spec(full, 1, parse_axiom_set({"wp", "iia"}))) == 1);
}

TEST_CASE("the iia census at (2,3) has 94 members") {
    const auto full = Domain::full(3);
    CHECK(count_models(aswf_spec(full, 2, parse_axiom_set({"iia"}))) == 94);
    CHECK(count_models(aswf_spec(full, 2, parse_axiom_set({"iia", "ni"}))) == 4);

    const auto witnesses = enumerate_models(aswf_spec(full, 2, parse_axiom_set({"iia"})), 94);
    REQUIRE(witnesses.size() == 94);
    for (std::size_t i = 0; i < witnesses.size(); ++i)
        for (std::size_t j = i + 1; j < witnesses.size(); ++j)
            CHECK(witnesses[i].outcomes != witnesses[j].outcomes);

    // deterministic re-run gives the identical list
    const auto again = enumerate_models(aswf_spec(full, 2, parse_axiom_set({"iia"})), 94);
    REQUIRE(again.size() == witnesses.size());
    for (std::size_t i = 0; i < witnesses.size(); ++i) CHECK(again[i].outcomes == witnesses[i].outcomes);
}

TEST_CASE("enumerating dictatorships") {
    const auto full = Domain::full(3);
    const auto ws = enumerate_models(aswf_spec(full, 2, parse_axiom_set({"dict"})), 10);
    REQUIRE(ws.size() == 2);
    CHECK(ws[0].outcomes == make_dictatorship(full, 2, 0).outcomes);
    CHECK(ws[1].outcomes == make_dictatorship(full, 2, 1).outcomes);

    CHECK_THROWS_AS(enumerate_models(aswf_spec(full, 2, parse_axiom_set({"dict"})), 0),
                    std::invalid_argument);
}

TEST_CASE("single-voter iia count matches brute force over all rules") {
    const auto full = Domain::full(3);
    const auto spec = aswf_spec(full, 1, parse_axiom_set({"iia"}));
    CHECK(count_models(spec) == brute_count(spec));  // 6^6 rules scanned
}

TEST_CASE("search agrees with brute force on restricted domains") {
    const auto all = enumerate_orders(3);
    const std::vector<Domain> domains = {
        Domain::of(3, {all[0], all[5]}),
        Domain::of(3, {all[0], all[1], all[2]}),
        Domain::of(3, {all[1], all[3], all[4]}),
    };
    const std::vector<std::vector<std::string>> axiom_sets = {
        {"wp"}, {"iia"}, {"ni"}, {"dict"}, {"!dict"}, {"const"}, {"wp", "iia"},
        {"iia", "!const"}, {"wp", "iia", "!dict"}, {"iia", "ni", "!dict", "!antidict"}};
    for (const auto& d : domains)
        for (const auto& names : axiom_sets) {
            auto spec = aswf_spec(d, 2, parse_axiom_set(names));
            const auto expected = brute_count(spec);
            CHECK(count_models(spec) == expected);
            spec.pruning = false;
            CHECK(count_models(spec) == expected);
        }
}

TEST_CASE("scf and sdf specs agree with brute force on small domains") {
    const auto all = enumerate_orders(3);
    const auto d = Domain::of(3, {all[0], all[3], all[5]});

    for (const auto& names : std::vector<std::vector<std::string>>{
             {"sp"}, {"sp", "onto"}, {"eff", "m"}, {"anon"}, {"sp", "u", "!dict_scf"}, {"eff", "m", "!dict_scf"}}) {
        SearchSpec spec;
        spec.family = Family::Scf;
        spec.domain = d;
        spec.n = 2;
        spec.axioms = parse_axiom_set(names);
        spec.mode = SearchMode::Count;
        const auto expected = brute_count(spec);
        CHECK(count_models(spec) == expected);
        spec.pruning = false;
        CHECK(count_models(spec) == expected);
    }

    const auto tiny = Domain::of(3, {all[0], all[5]});
    SearchSpec sdf;
    sdf.family = Family::Sdf;
    sdf.domain = tiny;
    sdf.n = 2;
    sdf.axioms = parse_axiom_set({"u", "liberal"});
    sdf.mode = SearchMode::Count;
    const auto expected = brute_count(sdf);
    CHECK(count_models(sdf) == expected);
    sdf.pruning = false;
    CHECK(count_models(sdf) == expected);
}

TEST_CASE("search witnesses pass all axiom checks") {
    const auto full = Domain::full(3);
    auto spec = aswf_spec(full, 2, parse_axiom_set({"iia", "ni"}), SearchMode::Enumerate);
    const auto ws = enumerate_models(spec, 10);
    REQUIRE(ws.size() == 4);
    const ProfileSpace ps(full, 2);
    for (const auto& w : ws) {
        CHECK(check_iia(ps, w.outcomes).status == Status::Satisfied);
        CHECK(check_ni(ps, w.outcomes).status == Status::Satisfied);
        const bool dict = check_dictatorial(ps, w.outcomes).status == Status::Satisfied;
        const bool anti = check_antidictatorial(ps, w.outcomes).status == Status::Satisfied;
        CHECK((dict || anti));
    }
}

TEST_CASE("resource budgets are reported distinctly") {
    const auto full = Domain::full(3);
    auto spec = aswf_spec(full, 2, parse_axiom_set({"iia"}));
    spec.node_budget = 10;
    const auto r = solve(spec);
    CHECK(r.status == SearchStatusKind::ResourceLimit);
    CHECK_THROWS_AS(count_models(spec), std::runtime_error);
}

TEST_CASE("counts are independent of worker fan-out") {
    const auto full = Domain::full(3);
    for (int workers : {1, 2, 3}) {
        auto spec = aswf_spec(full, 2, parse_axiom_set({"iia"}));
        spec.workers = workers;
        CHECK(count_models(spec) == 94);

        auto dspec = aswf_spec(full, 2, parse_axiom_set({"wp", "iia", "!dict"}), SearchMode::Decide);
        dspec.workers = workers;
        CHECK(solve(dspec).status == SearchStatusKind::Unsat);
    }
}

TEST_CASE("spec validation") {
    const auto full = Domain::full(3);
    auto spec = aswf_spec(full, 2, {});
    CHECK_THROWS_AS(solve(spec), std::invalid_argument);

    auto bad = aswf_spec(full, 2, parse_axiom_set({"sp"}));
    bad.family = Family::Aswf;
    CHECK_THROWS_AS(solve(bad), std::invalid_argument);
}
