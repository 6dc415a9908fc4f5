#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "isotone/poset.hpp"

using namespace isotone;

namespace {

// Every poset handed out by the API must satisfy the order axioms.
void check_axioms(const Poset& p) {
    const Relation& r = p.relation();
    CHECK(r.is_reflexive());
    CHECK(r.is_transitive());
    CHECK(r.is_antisymmetric());
}

} // namespace

TEST_CASE("a two-element chain orders 0 below 1", "[poset]") {
    Poset p = Poset::from_covers(2, {{0, 1}});
    CHECK(p.size() == 2);
    CHECK(p.leq(0, 1));
    CHECK_FALSE(p.leq(1, 0));
    CHECK(p.leq(0, 0));
    CHECK(p.leq(1, 1));
    check_axioms(p);
}

TEST_CASE("an antichain has only the reflexive pairs", "[poset]") {
    Poset p = Poset::antichain(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(p.leq(a, b) == (a == b));
    check_axioms(p);
}

TEST_CASE("covers compose transitively", "[poset]") {
    Poset p = Poset::from_covers(3, {{0, 1}, {1, 2}});
    CHECK(p.leq(0, 2));
    CHECK_FALSE(p.leq(2, 0));
    CHECK(p == Poset::chain(3));
}

TEST_CASE("cyclic covers are rejected with a witness cycle", "[poset]") {
    try {
        Poset::from_covers(3, {{0, 1}, {1, 2}, {2, 0}});
        FAIL("expected CycleError");
    } catch (const CycleError& e) {
        REQUIRE(e.cycle.size() >= 3);
        CHECK(e.cycle.front() == e.cycle.back());
        // every step of the witness is one of the input covers
        std::vector<std::pair<int, int>> covers = {{0, 1}, {1, 2}, {2, 0}};
        for (std::size_t i = 0; i + 1 < e.cycle.size(); ++i) {
            bool found = false;
            for (auto [a, b] : covers)
                if (a == e.cycle[i] && b == e.cycle[i + 1]) found = true;
            CHECK(found);
        }
    }
    CHECK_THROWS_AS(Poset::from_covers(1, {{0, 0}}), CycleError);
}

TEST_CASE("cover indices are bounds-checked", "[poset]") {
    CHECK_THROWS_AS(Poset::from_covers(2, {{0, 2}}), IndexError);
    CHECK_THROWS_AS(Poset::from_covers(2, {{-1, 0}}), IndexError);
    CHECK_THROWS_AS(Poset::from_covers(0, {}), IndexError);
    Poset p = Poset::chain(2);
    CHECK_THROWS_AS(p.leq(0, 2), IndexError);
    CHECK_THROWS_AS(p.upset(-1), IndexError);
}

TEST_CASE("not_leq_pairs lists incomparabilities and reversals", "[poset]") {
    CHECK(Poset::chain(2).not_leq_pairs() == std::vector<std::pair<int, int>>{{1, 0}});
    CHECK(Poset::antichain(2).not_leq_pairs() ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
    CHECK(Poset::chain(1).not_leq_pairs().empty());
}

TEST_CASE("upsets are the elements at or above a point", "[poset]") {
    Poset c = Poset::chain(3);
    CHECK(c.upset(0) == std::vector<int>{0, 1, 2});
    CHECK(c.upset(2) == std::vector<int>{2});
    CHECK(Poset::antichain(3).upset(1) == std::vector<int>{1});
}

TEST_CASE("labels are stored and validated", "[poset]") {
    Poset p = Poset::from_covers(2, {{0, 1}}, {"lo", "hi"});
    CHECK(p.label(0) == "lo");
    CHECK(p.label(1) == "hi");
    CHECK(Poset::chain(2).label(1) == "1");
    CHECK_THROWS_AS(Poset::from_covers(2, {{0, 1}}, {"only-one"}), IndexError);
}

TEST_CASE("cover_pairs is a transitive reduction that round-trips", "[poset]") {
    Poset c = Poset::chain(3);
    CHECK(c.cover_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        int n = 1 + int(rng() % 10);
        Poset p = Poset::random(n, Rat(1, 2), rng());
        Poset back = Poset::from_covers(n, p.cover_pairs());
        CHECK(p.relation() == back.relation());
    }
}

TEST_CASE("random posets are reproducible and satisfy the axioms", "[poset][property]") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        int n = 1 + int(rng() % 12);
        std::uint64_t seed = rng();
        Poset a = Poset::random(n, Rat(1, 3), seed);
        Poset b = Poset::random(n, Rat(1, 3), seed);
        CHECK(a == b);
        check_axioms(a);
        // upsets respect the order
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (a.leq(x, y))
                    for (int z : a.upset(y)) CHECK(a.leq(x, z));
    }
}

TEST_CASE("edge density 0 and 1 give the extreme posets", "[poset]") {
    CHECK(Poset::random(5, Rat(0), 99) == Poset::antichain(5));
    CHECK(Poset::random(5, Rat(1), 99) == Poset::chain(5));
    CHECK(Poset::random(1, Rat(1, 2), 3).size() == 1);
}
