#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "isotone/funcspace.hpp"

using namespace isotone;

namespace {

GroundFunction gf(std::vector<long> v) {
    std::vector<Rat> out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return GroundFunction(std::move(out));
}

// Brute-force preorder straight from the definition, used as the oracle
// for generated_preorder on tiny instances.
bool oracle_leq(const Family& s, int x, int y) {
    for (int i = 0; i < s.size(); ++i)
        if (!(s.member(i)[x] <= s.member(i)[y])) return false;
    return true;
}

} // namespace

TEST_CASE("isotone means non-decreasing along the order", "[funcspace]") {
    Poset chain = Poset::chain(2);
    CHECK(is_isotone(chain, gf({0, 1})));
    CHECK(is_isotone(chain, gf({1, 1})));
    CHECK_FALSE(is_isotone(chain, gf({1, 0})));
    CHECK(is_isotone(Poset::antichain(2), gf({1, 0})));
    CHECK_THROWS_AS(is_isotone(chain, gf({0, 1, 2})), CarrierMismatch);
}

TEST_CASE("families validate member sizes and isotonicity", "[funcspace]") {
    Poset chain = Poset::chain(2);
    CHECK_THROWS_AS(Family(chain, {gf({0, 1, 2})}), CarrierMismatch);
    try {
        Family(chain, {gf({0, 1}), gf({1, 0})});
        FAIL("expected NotIsotone");
    } catch (const NotIsotone& e) {
        CHECK(e.member_index == 1);
        CHECK(e.a == 0);
        CHECK(e.b == 1);
    }
    Family s(chain, {gf({0, 1})}, {"step"});
    CHECK(s.size() == 1);
    CHECK(s.name(0) == "step");
    CHECK(s.member(0)[1] == Rat(1));
    CHECK_THROWS_AS(s.member(1), BadGeneratorIndex);
    CHECK_THROWS_AS(Family(chain, {gf({0, 1})}, {"a", "b"}), CarrierMismatch);
}

TEST_CASE("the preorder generated by a family follows the definition", "[funcspace]") {
    Poset chain = Poset::chain(2);
    Family upset(chain, {gf({1, 1}), gf({0, 1})});
    CHECK(generated_preorder(chain, upset) == chain.relation());

    // a constant family relates everything to everything
    Family constant(chain, {gf({1, 1})});
    Relation total = generated_preorder(chain, constant);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(total.at(a, b));

    // an injective function on an antichain induces the order of its values
    Poset anti = Poset::antichain(3);
    Family inj(anti, {gf({2, 0, 1})});
    Relation r = generated_preorder(anti, inj);
    CHECK(r.at(1, 2));
    CHECK(r.at(2, 0));
    CHECK_FALSE(r.at(0, 1));

    CHECK_THROWS_AS(generated_preorder(chain, Family(chain, {})), EmptyFamily);
}

TEST_CASE("generates reports a witness pair on failure", "[funcspace]") {
    Poset chain = Poset::chain(2);
    CHECK(bool(generates(chain, Family(chain, {gf({1, 1}), gf({0, 1})}))));

    GeneratesResult g = generates(chain, Family(chain, {gf({1, 1})}));
    REQUIRE_FALSE(bool(g));
    CHECK(g.a == 1);
    CHECK(g.b == 0); // 1 is not below 0, yet no member separates them
    CHECK_FALSE(g.reason.empty());

    // isotone on the antichain it was built over, but useless there
    Poset anti = Poset::antichain(2);
    CHECK_FALSE(bool(generates(anti, Family(anti, {gf({1, 1})}))));
    CHECK_THROWS_AS(generates(chain, Family(chain, {})), EmptyFamily);
}

TEST_CASE("generates re-validates members against the poset argument", "[funcspace]") {
    // (1, 0) is isotone on the antichain, not on the chain
    Poset anti = Poset::antichain(2);
    Family s(anti, {gf({1, 0})});
    CHECK_THROWS_AS(generates(Poset::chain(2), s), NotIsotone);
}

TEST_CASE("separates_points on small instances", "[funcspace]") {
    Poset chain = Poset::chain(2);
    CHECK(separates_points(chain, Family(chain, {gf({0, 1})})));
    CHECK_FALSE(separates_points(chain, Family(chain, {gf({1, 1})})));
    Poset single = Poset::chain(1);
    CHECK(separates_points(single, Family(single, {gf({5})})));
}

TEST_CASE("sup_dist is the exact sup metric", "[funcspace]") {
    CHECK(sup_dist(gf({0, 3}), gf({1, 1})) == Rat(2));
    CHECK(sup_dist(gf({1, 2}), gf({1, 2})) == Rat(0));
    CHECK_THROWS_AS(sup_dist(gf({1}), gf({1, 2})), CarrierMismatch);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rat> a, b, c;
        int n = 1 + int(rng() % 6);
        for (int j = 0; j < n; ++j) {
            a.emplace_back(long(rng() % 21) - 10, 1 + long(rng() % 4));
            b.emplace_back(long(rng() % 21) - 10, 1 + long(rng() % 4));
            c.emplace_back(long(rng() % 21) - 10, 1 + long(rng() % 4));
        }
        GroundFunction fa{a}, fb{b}, fc{c};
        CHECK(sup_dist(fa, fb) == sup_dist(fb, fa));
        CHECK(sup_dist(fa, fb) >= Rat(0));
        CHECK(sup_dist(fa, fc) <= sup_dist(fa, fb) + sup_dist(fb, fc));
    }
}

TEST_CASE("upset generators are the indicator functions of upsets", "[funcspace]") {
    Poset chain = Poset::chain(2);
    Family s = upset_generators(chain);
    REQUIRE(s.size() == 2);
    CHECK(s.member(0) == gf({1, 1}));
    CHECK(s.member(1) == gf({0, 1}));
    CHECK(s.name(0) == "up(0)");
    CHECK(s.name(1) == "up(1)");

    Poset anti = Poset::antichain(2);
    Family t = upset_generators(anti);
    CHECK(t.member(0) == gf({1, 0}));
    CHECK(t.member(1) == gf({0, 1}));

    Poset single = Poset::chain(1);
    CHECK(upset_generators(single).member(0) == gf({1}));
}

TEST_CASE("upset generators always generate the order", "[funcspace][property]") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 60; ++i) {
        int n = 1 + int(rng() % 10);
        Poset p = Poset::random(n, Rat(2, 5), rng());
        Family s = upset_generators(p);
        CHECK(bool(generates(p, s)));
        CHECK(separates_points(p, s));
        CHECK(generated_preorder(p, s) == p.relation());

        // the generated preorder contains the order whenever members are isotone
        Relation r = generated_preorder(p, s);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (p.leq(a, b)) CHECK(r.at(a, b));
                CHECK(r.at(a, b) == oracle_leq(s, a, b));
            }
    }
}
