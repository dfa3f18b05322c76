#include "catch_amalgamated.hpp"

#include "scv/rules.hpp"

using namespace scv;

namespace {

// Independent brute-force oracle: filter every binary relation over m
// alternatives by directly testing the subset condition.
int count_choice_relations_oracle(int m) {
    int count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (m * m)); ++bits) {
        bool ok = true;
        for (std::uint32_t subset = 1; subset < (1u << m) && ok; ++subset) {
            bool has_best = false;
            for (Alt b = 0; b < m && !has_best; ++b) {
                if (!((subset >> b) & 1u)) continue;
                bool best = true;
                for (Alt a = 0; a < m; ++a)
                    if (((subset >> a) & 1u) && !((bits >> (b * m + a)) & 1u)) { best = false; break; }
                has_best = best;
            }
            ok = has_best;
        }
        if (ok) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("choice relation enumeration") {
    REQUIRE_THROWS_AS(enumerate_choice_relations(0), std::invalid_argument);
    REQUIRE_THROWS_AS(enumerate_choice_relations(5), std::invalid_argument);

    const auto m1 = enumerate_choice_relations(1);
    REQUIRE(m1.size() == 1);
    CHECK(m1[0].relates(0, 0));

    CHECK(enumerate_choice_relations(2).size() == static_cast<std::size_t>(count_choice_relations_oracle(2)));

    const auto m3 = enumerate_choice_relations(3);
    CHECK(count_choice_relations_oracle(3) == 25);
    REQUIRE(m3.size() == 25);

    // canonical order, validity, reflexivity and pair completeness
    for (std::size_t i = 0; i < m3.size(); ++i) {
        CHECK(generates_choice_function(3, m3[i].bits));
        if (i > 0) CHECK(m3[i - 1].bits < m3[i].bits);
        for (Alt a = 0; a < 3; ++a) {
            CHECK(m3[i].relates(a, a));
            for (Alt b = a + 1; b < 3; ++b) CHECK((m3[i].relates(a, b) || m3[i].relates(b, a)));
        }
    }

    // every non-member over the full 512 space fails the condition
    std::size_t next = 0;
    for (std::uint32_t bits = 0; bits < 512; ++bits) {
        const bool member = next < m3.size() && m3[next].bits == bits;
        if (member) ++next;
        CHECK(generates_choice_function(3, bits) == member);
    }

    // the reflexive closure of every strict linear order is in the list
    for (const auto& o : enumerate_orders(3)) {
        std::uint32_t bits = 0;
        for (Alt a = 0; a < 3; ++a)
            for (Alt b = 0; b < 3; ++b)
                if (a == b || o.prefers(a, b)) bits |= 1u << (a * 3 + b);
        CHECK(generates_choice_function(3, bits));
    }
}

TEST_CASE("partial rule extension") {
    const auto full = Domain::full(3);
    auto p = PartialAswf::empty(full, 2);
    REQUIRE(p.outcomes.size() == 36);
    CHECK(p.assigned_count == 0);
    CHECK(!p.is_total());

    const auto p1 = complete(p, 5, 3);
    CHECK(p1.assigned_count == 1);
    CHECK(p1.outcomes[5] == 3);
    CHECK(p.outcomes[5] == -1);  // input unchanged

    CHECK_THROWS_AS(complete(p1, 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(complete(p, 0, 6), std::invalid_argument);
    CHECK_THROWS_AS(complete(p, 36, 0), std::invalid_argument);

    auto q = p;
    for (std::uint64_t c = 0; c < 36; ++c) q = complete(q, c, static_cast<int>(c % 6));
    CHECK(q.is_total());
    const auto t = q.to_total();
    CHECK(t.outcomes[35] == 5);
    CHECK_THROWS_AS(p.to_total(), std::invalid_argument);

    // the number of total extensions of k free aswf cells is (m!)^k
    const auto small = Domain::of(3, {full.orders[0], full.orders[5]});
    auto s = PartialScf::empty(small, 2);
    s = complete(s, 0, 1);
    s = complete(s, 3, 2);
    std::uint64_t extensions = 0;
    std::vector<int> free_cells{1, 2};
    for (int v1 = 0; v1 < 3; ++v1)
        for (int v2 = 0; v2 < 3; ++v2) {
            auto t2 = complete(complete(s, 1, v1), 2, v2);
            if (t2.is_total()) ++extensions;
        }
    CHECK(extensions == 9);  // m^k for scf, k = 2
}

TEST_CASE("rule signatures serialize canonically") {
    const auto full = Domain::full(3);
    const auto dict0 = make_dictatorship(full, 2, 0);

    // entry i equals voter 0's order at profile i
    ProfileCodec codec(full, 2);
    for (std::uint64_t p = 0; p < 36; ++p)
        CHECK(dict0.outcomes[p] == static_cast<int>(codec.decode(p).orders[0].order_index()));

    const auto sig = rule_signature(dict0);
    const auto parsed = rule_from_json<Family::Aswf>(nlohmann::json::parse(sig));
    CHECK(parsed.outcomes == dict0.outcomes);
    CHECK(parsed.domain == dict0.domain);
    CHECK(rule_signature(parsed) == sig);

    const auto dict1 = make_dictatorship(full, 2, 1);
    CHECK(rule_signature(dict1) != sig);

    // scf and sdf round trips
    const auto scf = make_scf_dictatorship(full, 2, 1);
    const auto scf2 = rule_from_json<Family::Scf>(nlohmann::json::parse(rule_signature(scf)));
    CHECK(scf2.outcomes == scf.outcomes);

    SdfTable sdf;
    sdf.domain = full;
    sdf.n = 2;
    sdf.outcomes.assign(36, 7 % static_cast<int>(enumerate_choice_relations(3).size()));
    const auto sdf2 = rule_from_json<Family::Sdf>(nlohmann::json::parse(rule_signature(sdf)));
    CHECK(sdf2.outcomes == sdf.outcomes);
}

TEST_CASE("constant and anti-dictatorship constructions") {
    const auto full = Domain::full(3);
    const auto cba = LinearOrder::from_string("cba");
    const auto c = make_constant_aswf(full, 2, cba);
    for (int v : c.outcomes) CHECK(v == 5);

    ProfileCodec codec(full, 2);
    const auto anti = make_antidictatorship(full, 2, 1);
    for (std::uint64_t p = 0; p < 36; ++p)
        CHECK(anti.outcomes[p] == static_cast<int>(codec.decode(p).orders[1].reversed().order_index()));
}
