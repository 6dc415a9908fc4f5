#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "isotone/pl.hpp"

using namespace isotone;

namespace {

// Random non-decreasing piecewise-linear function: sorted distinct x's,
// non-decreasing y's, non-negative tail slopes.
PLFunction random_pl(std::mt19937_64& rng) {
    int nbps = int(rng() % 4);
    if (nbps == 0) return PLFunction::affine(Rat(long(rng() % 4)), Rat(long(rng() % 11) - 5));
    std::vector<PLFunction::Breakpoint> bps;
    Rat x(long(rng() % 5) - 2);
    Rat y(long(rng() % 7) - 3);
    for (int i = 0; i < nbps; ++i) {
        bps.push_back({x, y});
        x += Rat(1 + long(rng() % 3), 1 + long(rng() % 2));
        y += Rat(long(rng() % 3), 1 + long(rng() % 3));
    }
    return PLFunction::from_breakpoints(bps, Rat(long(rng() % 3)), Rat(long(rng() % 3)));
}

// Points worth probing: every breakpoint of f exactly, plus nearby offsets
// and a few random rationals.
std::vector<Rat> probe_points(const PLFunction& f, const PLFunction& g, std::mt19937_64& rng) {
    std::vector<Rat> pts;
    for (const PLFunction* h : {&f, &g})
        for (const auto& bp : h->breakpoints()) {
            pts.push_back(bp.x);
            pts.push_back(bp.x - Rat(1, 7));
            pts.push_back(bp.x + Rat(1, 7));
        }
    for (int i = 0; i < 8; ++i) pts.push_back(Rat(long(rng() % 41) - 20, 1 + long(rng() % 6)));
    return pts;
}

} // namespace

TEST_CASE("ramps clamp to 0 and 1 outside their window", "[pl]") {
    PLFunction r = PLFunction::ramp(Rat(2), Rat(5));
    CHECK(r(Rat(2)) == Rat(0));
    CHECK(r(Rat(5)) == Rat(1));
    CHECK(r(Rat(0)) == Rat(0));
    CHECK(r(Rat(7)) == Rat(1));
    CHECK(r(Rat(7, 2)) == Rat(1, 2));

    PLFunction unit = PLFunction::ramp(Rat(0), Rat(1));
    CHECK(unit(Rat(1, 2)) == Rat(1, 2));
    CHECK(unit(Rat(-3)) == Rat(0));
    CHECK(eval_op(ramp(Rat(0), Rat(4)), Rat(1)) == Rat(1, 4));
}

TEST_CASE("degenerate ramp windows are rejected", "[pl]") {
    CHECK_THROWS_AS(PLFunction::ramp(Rat(1), Rat(1)), DegenerateRamp);
    CHECK_THROWS_AS(PLFunction::ramp(Rat(2), Rat(1)), DegenerateRamp);
    CHECK_THROWS_AS(Smoothstep(Rat(1), Rat(1)), DegenerateRamp);
    CHECK_THROWS_AS(ramp(Rat(3), Rat(2), RampProvider::smoothstep), DegenerateRamp);
}

TEST_CASE("smoothstep interpolates cubically between its endpoints", "[pl]") {
    Smoothstep s(Rat(0), Rat(1));
    CHECK(s(Rat(0)) == Rat(0));
    CHECK(s(Rat(1)) == Rat(1));
    CHECK(s(Rat(1, 2)) == Rat(1, 2));
    CHECK(s(Rat(-2)) == Rat(0));
    CHECK(s(Rat(2)) == Rat(1));
    // u^2 (3 - 2u) at u = 1/4: (1/16)(3 - 1/2) = 5/32
    CHECK(s(Rat(1, 4)) == Rat(5, 32));
    Rat u(1, 4);
    CHECK(s(u) == u * u * (Rat(3) - Rat(2) * u));

    Smoothstep wide(Rat(2), Rat(6));
    CHECK(wide(Rat(3)) == Rat(5, 32)); // same u after rescaling
}

TEST_CASE("affine functions evaluate and expose slope and intercept", "[pl]") {
    PLFunction f = PLFunction::affine(Rat(2), Rat(-1));
    CHECK(f.is_affine());
    CHECK(f(Rat(3)) == Rat(5));
    CHECK(f.slope() == Rat(2));
    CHECK(f.intercept() == Rat(-1));
    CHECK(PLFunction::constant(Rat(7))(Rat(100)) == Rat(7));
    CHECK(PLFunction::identity()(Rat(-3, 2)) == Rat(-3, 2));
    CHECK_THROWS_AS(PLFunction::affine(Rat(-1), Rat(0)), NotNondecreasing);
}

TEST_CASE("breakpoint input is validated", "[pl]") {
    using BP = PLFunction::Breakpoint;
    CHECK_THROWS_AS(
        PLFunction::from_breakpoints({BP{Rat(1), Rat(0)}, BP{Rat(0), Rat(1)}}, Rat(0), Rat(0)),
        MalformedFunction);
    CHECK_THROWS_AS(
        PLFunction::from_breakpoints({BP{Rat(0), Rat(0)}, BP{Rat(0), Rat(1)}}, Rat(0), Rat(0)),
        MalformedFunction);
    CHECK_THROWS_AS(
        PLFunction::from_breakpoints({BP{Rat(0), Rat(0)}, BP{Rat(1), Rat(-1)}}, Rat(0), Rat(0)),
        NotNondecreasing);
    CHECK_THROWS_AS(
        PLFunction::from_breakpoints({BP{Rat(0), Rat(0)}}, Rat(-1), Rat(0)), NotNondecreasing);

    CHECK_FALSE(PLFunction::is_nondecreasing_data({BP{Rat(0), Rat(0)}, BP{Rat(1), Rat(-1)}},
                                                  Rat(0), Rat(0)));
    CHECK(PLFunction::is_nondecreasing_data({BP{Rat(0), Rat(0)}, BP{Rat(1), Rat(1)}}, Rat(0),
                                            Rat(0)));
}

TEST_CASE("canonicalization removes collinear points and flat tails", "[pl]") {
    using BP = PLFunction::Breakpoint;
    // three collinear points with matching tail slopes collapse to the identity
    PLFunction f = PLFunction::from_breakpoints(
        {BP{Rat(0), Rat(0)}, BP{Rat(1), Rat(1)}, BP{Rat(2), Rat(2)}}, Rat(1), Rat(1));
    CHECK(f == PLFunction::identity());

    // a redundant midpoint inside a ramp disappears
    PLFunction r = PLFunction::from_breakpoints(
        {BP{Rat(0), Rat(0)}, BP{Rat(1, 2), Rat(1, 2)}, BP{Rat(1), Rat(1)}}, Rat(0), Rat(0));
    CHECK(r == PLFunction::ramp(Rat(0), Rat(1)));

    // canonical equality is functional equality on these examples
    CHECK(PLFunction::from_breakpoints({BP{Rat(5), Rat(3)}}, Rat(2), Rat(2)) ==
          PLFunction::affine(Rat(2), Rat(-7)));
}

TEST_CASE("composition agrees with pointwise evaluation", "[pl][property]") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 300; ++i) {
        PLFunction inner = random_pl(rng);
        PLFunction outer = random_pl(rng);
        PLFunction comp = compose(outer, inner);
        CHECK(comp.is_nondecreasing());
        for (const Rat& t : probe_points(inner, comp, rng))
            CHECK(comp(t) == outer(inner(t)));
    }
}

TEST_CASE("composition of ramps collapses to the expected ramp", "[pl]") {
    PLFunction unit = PLFunction::ramp(Rat(0), Rat(1));
    CHECK(compose(unit, unit) == unit);
    CHECK(compose(PLFunction::ramp(Rat(1, 2), Rat(1)), unit) ==
          PLFunction::ramp(Rat(1, 2), Rat(1)));
    // the unit ramp is the identity on [0, 1], so it disappears on the outside
    CHECK(compose(unit, PLFunction::ramp(Rat(1, 2), Rat(1))) ==
          PLFunction::ramp(Rat(1, 2), Rat(1)));
    CHECK(compose(unit, PLFunction::constant(Rat(3))) == PLFunction::constant(Rat(1)));
    CHECK(compose(PLFunction::identity(), unit) == unit);
    CHECK(compose(unit, PLFunction::identity()) == unit);
}

TEST_CASE("operating functions stay within [0,1] for ramps", "[pl][property]") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 100; ++i) {
        Rat a(long(rng() % 21) - 10, 1 + long(rng() % 5));
        Rat b = a + Rat(1 + long(rng() % 9), 1 + long(rng() % 5));
        for (RampProvider prov : {RampProvider::pl, RampProvider::smoothstep}) {
            OperatingFn h = ramp(a, b, prov);
            CHECK(h.is_nondecreasing());
            Rat prev;
            bool have_prev = false;
            for (int s = -3; s <= 13; ++s) {
                Rat t = a + (b - a) * Rat(s, 10);
                Rat v = h(t);
                CHECK(v >= Rat(0));
                CHECK(v <= Rat(1));
                if (t <= a) CHECK(v == Rat(0));
                if (t >= b) CHECK(v == Rat(1));
                if (have_prev) CHECK(prev <= v);
                prev = v;
                have_prev = true;
            }
        }
    }
}

TEST_CASE("operating function wrapper dispatches by kind", "[pl]") {
    OperatingFn p = ramp(Rat(0), Rat(1), RampProvider::pl);
    OperatingFn s = ramp(Rat(0), Rat(1), RampProvider::smoothstep);
    CHECK(p.is_pl());
    CHECK_FALSE(s.is_pl());
    CHECK(p.pl() == PLFunction::ramp(Rat(0), Rat(1)));
    CHECK(s.smoothstep() == Smoothstep(Rat(0), Rat(1)));
    CHECK(p(Rat(1, 4)) == Rat(1, 4));
    CHECK(s(Rat(1, 4)) == Rat(5, 32));
    CHECK(p != s);
    CHECK(p == OperatingFn(PLFunction::ramp(Rat(0), Rat(1))));
}
