#include "catch_amalgamated.hpp"

#include "scv/orders.hpp"

using namespace scv;

TEST_CASE("order enumeration is lexicographic and complete") {
    REQUIRE_THROWS_AS(enumerate_orders(0), std::invalid_argument);

    const auto one = enumerate_orders(1);
    REQUIRE(one.size() == 1);

    const auto m3 = enumerate_orders(3);
    REQUIRE(m3.size() == 6);
    CHECK(m3[0].to_string() == "abc");
    CHECK(m3[1].to_string() == "acb");
    CHECK(m3[2].to_string() == "bac");
    CHECK(m3[3].to_string() == "bca");
    CHECK(m3[4].to_string() == "cab");
    CHECK(m3[5].to_string() == "cba");

    const auto m4 = enumerate_orders(4);
    REQUIRE(m4.size() == 24);
    CHECK(m4[0].word() == std::vector<Alt>{0, 1, 2, 3});

    for (std::size_t i = 0; i < m4.size(); ++i) {
        CHECK(m4[i].order_index() == i);
        CHECK(LinearOrder::from_index(4, i) == m4[i]);
        // rank is a bijection
        std::vector<bool> seen(4, false);
        for (Alt a = 0; a < 4; ++a) {
            REQUIRE(m4[i].rank[a] >= 0);
            REQUIRE(m4[i].rank[a] < 4);
            REQUIRE(!seen[m4[i].rank[a]]);
            seen[m4[i].rank[a]] = true;
        }
        for (std::size_t j = i + 1; j < m4.size(); ++j) CHECK(!(m4[i] == m4[j]));
    }
}

TEST_CASE("order word round trips") {
    const auto o = LinearOrder::from_string("bac");
    CHECK(o.prefers(1, 0));
    CHECK(o.prefers(0, 2));
    CHECK(!o.prefers(2, 1));
    CHECK(o.top() == 1);
    CHECK(o.reversed().to_string() == "cab");
    CHECK(LinearOrder::from_index(3, o.order_index()) == o);
    CHECK_THROWS_AS(LinearOrder::from_word({0, 0, 2}), std::invalid_argument);
}

TEST_CASE("kendall distance basics") {
    const auto abc = LinearOrder::from_string("abc");
    const auto acb = LinearOrder::from_string("acb");
    const auto cba = LinearOrder::from_string("cba");
    CHECK(kendall_distance(abc, abc) == 0);
    CHECK(kendall_distance(abc, cba) == 3);
    CHECK(kendall_distance(abc, acb) == 1);
    CHECK_THROWS_AS(kendall_distance(abc, enumerate_orders(4)[0]), std::invalid_argument);
}

TEST_CASE("kendall distance is a metric at m=3 and m=4") {
    for (int m : {3, 4}) {
        const auto orders = enumerate_orders(m);
        for (const auto& p : orders)
            for (const auto& q : orders) {
                const int d = kendall_distance(p, q);
                CHECK(d == kendall_distance(q, p));
                CHECK((d == 0) == (p == q));
                for (const auto& r : orders)
                    CHECK(kendall_distance(p, r) <= d + kendall_distance(q, r));
            }
    }
}

TEST_CASE("kendall distance counts pair restriction disagreements") {
    const auto orders = enumerate_orders(3);
    for (const auto& p : orders)
        for (const auto& q : orders) {
            int disagreements = 0;
            for (Alt a = 0; a < 3; ++a)
                for (Alt b = a + 1; b < 3; ++b)
                    if (restrict_to_pair(p, a, b) != restrict_to_pair(q, a, b)) ++disagreements;
            CHECK(disagreements == kendall_distance(p, q));
        }
}

TEST_CASE("pair restriction") {
    const auto abc = LinearOrder::from_string("abc");
    const auto cba = LinearOrder::from_string("cba");
    CHECK(restrict_to_pair(abc, 0, 2).dir == PairDir::FirstOverSecond);
    CHECK(restrict_to_pair(cba, 0, 2).dir == PairDir::SecondOverFirst);
    CHECK(restrict_to_pair(abc, 1, 2).dir == PairDir::FirstOverSecond);
    CHECK_THROWS_AS(restrict_to_pair(abc, 1, 1), std::invalid_argument);
}

TEST_CASE("profile codec is a bijection") {
    const auto full = Domain::full(3);

    ProfileCodec codec(full, 2);
    REQUIRE(codec.profile_count == 36);

    const auto p0 = codec.decode(0);
    CHECK(p0.orders[0] == full.orders[0]);
    CHECK(p0.orders[1] == full.orders[0]);

    for (std::uint64_t i = 0; i < codec.profile_count; ++i) {
        const auto p = codec.decode(i);
        CHECK(codec.encode(p) == i);
    }
    CHECK_THROWS_AS(codec.decode(36), std::invalid_argument);

    // voter 0 is the most significant digit
    const auto p7 = codec.decode(7);  // 7 = 1*6 + 1
    CHECK(p7.orders[0] == full.orders[1]);
    CHECK(p7.orders[1] == full.orders[1]);

    ProfileCodec codec3(full, 3);
    REQUIRE(codec3.profile_count == 216);
    for (std::uint64_t i = 0; i < codec3.profile_count; ++i)
        CHECK(codec3.encode(codec3.decode(i)) == i);

    const auto sub = Domain::of(3, {full.orders[0], full.orders[2], full.orders[3], full.orders[5]});
    ProfileCodec codec4(sub, 2);
    CHECK(codec4.profile_count == 16);

    CHECK_THROWS_AS(ProfileCodec(full, 0), std::invalid_argument);
}

TEST_CASE("domain construction rejects duplicates and wrong sizes") {
    const auto orders = enumerate_orders(3);
    CHECK_THROWS_AS(Domain::of(3, {}), std::invalid_argument);
    CHECK_THROWS_AS(Domain::of(3, {orders[0], orders[0]}), std::invalid_argument);
    CHECK_THROWS_AS(Domain::of(4, {orders[0]}), std::invalid_argument);

    const auto d = Domain::of(3, {orders[4], orders[1]});
    CHECK(d.orders[0] == orders[1]);  // canonical sort by order_index
    CHECK(d.position_of(orders[4]) == 1);
    CHECK(d.position_of(orders[0]) == -1);
    CHECK(!d.is_complete());
    CHECK(Domain::full(3).is_complete());
}

TEST_CASE("single peaked domain at m=3 has four orders") {
    const auto d = single_peaked_domain(3);
    REQUIRE(d.size() == 4);
    std::vector<std::string> words;
    for (const auto& o : d.orders) words.push_back(o.to_string());
    CHECK(words == std::vector<std::string>{"abc", "bac", "bca", "cba"});

    // every member passes the predicate, every excluded order fails it
    const auto line = LinearOrder::from_word({0, 1, 2});
    for (const auto& o : enumerate_orders(3))
        CHECK(is_single_peaked(o, line) == (d.position_of(o) >= 0));

    CHECK(single_peaked_domain(2).size() == 2);
    CHECK(single_peaked_domain(1).size() == 1);
    CHECK(single_peaked_domain(4).size() == 8);  // 2^(m-1)
}
