#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "isotone/cone.hpp"
#include "isotone/errors.hpp"
#include "isotone/funcspace.hpp"
#include "isotone/pl.hpp"
#include "isotone/poset.hpp"
#include "isotone/rational.hpp"

namespace isotone {

namespace detail {

struct ExprVals {
    ConeExprPtr expr;
    GroundFunction values;
};

inline GroundFunction apply_op(const OperatingFn& op, const GroundFunction& f) {
    std::vector<Rat> out;
    out.reserve(std::size_t(f.size()));
    for (int i = 0; i < f.size(); ++i) out.push_back(op(f[i]));
    return GroundFunction(std::move(out));
}

inline GroundFunction mean_of(const std::vector<const GroundFunction*>& fs) {
    Rat k(long(fs.size()));
    std::vector<Rat> out(std::size_t(fs.front()->size()), Rat(0));
    for (const GroundFunction* f : fs)
        for (int i = 0; i < f->size(); ++i) out[std::size_t(i)] += (*f)[i];
    for (Rat& v : out) v /= k;
    return GroundFunction(std::move(out));
}

// Lowest-index member separating x from y, composed with a 0-1 ramp between
// its values. Values are computed alongside the certificate so callers never
// re-evaluate the tree during construction.
inline ExprVals separate_points_impl(const Poset& p, const Family& s, int x, int y,
                                     RampProvider provider) {
    if (p.leq(y, x))
        throw PreconditionViolated(x, y,
                                   "cannot separate: " + p.label(y) + " <= " + p.label(x));
    for (int i = 0; i < s.size(); ++i) {
        const GroundFunction& f = s.member(i);
        if (f[x] < f[y]) {
            OperatingFn h = ramp(f[x], f[y], provider);
            return {ConeExpr::comp(h, ConeExpr::gen(i)), apply_op(h, f)};
        }
    }
    throw NoSeparator(x, y);
}

inline std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace detail

// A certificate evaluating to 0 at x, 1 at y, within [0, 1] everywhere.
// Requires y not<= x and a member with f(x) < f(y); the lowest-index such
// member is chosen, so identical inputs give identical certificates.
inline ConeExprPtr separate_points(const Poset& p, const Family& s, int x, int y,
                                   RampProvider provider = RampProvider::pl) {
    return detail::separate_points_impl(p, s, x, y, provider).expr;
}

// Greedy set cover: repeatedly pick the region covering the most still
// uncovered elements of target, breaking ties by lowest candidate index.
// Returns the chosen candidate indices, ascending. Throws UncoverableSet
// when even the union of regions misses an element.
inline std::vector<int> select_cover(const Poset& p, const std::vector<int>& target,
                                     const std::vector<std::vector<int>>& regions) {
    std::vector<int> want = detail::sorted_unique(target);
    for (int e : want)
        if (e < 0 || e >= p.size()) throw IndexError("cover target element out of range");
    if (want.empty()) return {};

    std::vector<std::vector<char>> in_region(regions.size(), std::vector<char>(p.size(), 0));
    for (std::size_t r = 0; r < regions.size(); ++r)
        for (int e : regions[r])
            if (e >= 0 && e < p.size()) in_region[r][std::size_t(e)] = 1;

    for (int e : want) {
        bool covered = false;
        for (std::size_t r = 0; r < regions.size() && !covered; ++r)
            covered = in_region[r][std::size_t(e)] != 0;
        if (!covered) throw UncoverableSet(e);
    }

    std::vector<char> uncovered(p.size(), 0);
    for (int e : want) uncovered[std::size_t(e)] = 1;
    int remaining = int(want.size());

    std::vector<int> chosen;
    while (remaining > 0) {
        int best = -1, best_gain = 0;
        for (std::size_t r = 0; r < regions.size(); ++r) {
            int gain = 0;
            for (int e : want)
                if (uncovered[std::size_t(e)] && in_region[r][std::size_t(e)]) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best = int(r);
            }
        }
        chosen.push_back(best); // best >= 0: the upfront check guarantees progress
        for (int e : want)
            if (uncovered[std::size_t(e)] && in_region[std::size_t(best)][std::size_t(e)]) {
                uncovered[std::size_t(e)] = 0;
                --remaining;
            }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

// Intermediate stages of a set separation, kept for verification: the
// margins the construction guarantees are asserted over these exact values.
struct SetSeparation {
    ConeExprPtr expr;
    GroundFunction values;
    bool degenerate = false; // empty zero-set or one-set shortcut taken

    struct Anchor {
        int y = -1;                 // element of the one-set this stage targets
        std::vector<int> zero_cover; // elements of the zero-set whose low regions cover it
        int k = 0;                   // zero_cover size; threshold is 1 - 3/(4k)
        ConeExprPtr mean;            // average of the chosen pair separators
        GroundFunction mean_values;
        ConeExprPtr pinned;          // exactly 0 on the zero-set, 1 at y
        GroundFunction pinned_values;
    };
    std::vector<Anchor> anchors; // one per element of the one-set, ascending

    std::vector<int> one_cover; // anchors whose high regions cover the one-set
    int l = 0;                  // one_cover size; final ramp rises on [0, 3/(4l)]
    ConeExprPtr mean;           // average of the chosen pinned separators
    GroundFunction mean_values;
};

// A certificate evaluating to exactly 0 on zero_set, exactly 1 on one_set,
// within [0, 1] everywhere. Precondition: no y in one_set is below any x in
// zero_set. Empty zero_set yields the constant 1, empty one_set the
// constant 0.
//
// Pipeline, for each y in the one-set: separate y from every x in the
// zero-set, cover the zero-set by the regions where those separators stay
// below 1/4, average the k chosen ones, and ramp on [1 - 3/(4k), 1] to pin
// the zero-set to exact 0. Then cover the one-set by the regions where the
// pinned functions reach 3/4, average the l chosen ones, and ramp on
// [0, 3/(4l)] to pin the one-set to exact 1.
inline SetSeparation separate_sets_traced(const Poset& p, const Family& s,
                                          const std::vector<int>& zero_set,
                                          const std::vector<int>& one_set,
                                          RampProvider provider = RampProvider::pl) {
    require_same_carrier(p, s);
    std::vector<int> zs = detail::sorted_unique(zero_set);
    std::vector<int> os = detail::sorted_unique(one_set);
    for (int e : zs)
        if (e < 0 || e >= p.size()) throw IndexError("zero-set element out of range");
    for (int e : os)
        if (e < 0 || e >= p.size()) throw IndexError("one-set element out of range");
    for (int x : zs)
        for (int y : os)
            if (p.leq(y, x))
                throw PreconditionViolated(
                    x, y, "one-set element " + p.label(y) + " is below zero-set element " +
                              p.label(x));

    if (s.empty()) throw EmptyFamily();

    SetSeparation out;
    if (zs.empty() || os.empty()) {
        Rat c = zs.empty() ? Rat(1) : Rat(0);
        out.expr = scale_shift(ConeExpr::gen(0), Rat(0), c);
        out.values = GroundFunction::constant(p.size(), c);
        out.degenerate = true;
        return out;
    }

    const Rat quarter(1, 4);
    const Rat three_quarters(3, 4);

    for (int y : os) {
        std::vector<detail::ExprVals> pair_seps;
        pair_seps.reserve(zs.size());
        for (int x : zs) pair_seps.push_back(detail::separate_points_impl(p, s, x, y, provider));

        // Low regions: each pair separator is below 1/4 around its own x.
        std::vector<std::vector<int>> low_regions;
        low_regions.reserve(zs.size());
        for (const auto& ev : pair_seps) {
            std::vector<int> region;
            for (int z = 0; z < p.size(); ++z)
                if (ev.values[z] < quarter) region.push_back(z);
            low_regions.push_back(std::move(region));
        }
        std::vector<int> chosen = select_cover(p, zs, low_regions);

        SetSeparation::Anchor anchor;
        anchor.y = y;
        anchor.k = int(chosen.size());
        std::vector<ConeExprPtr> exprs;
        std::vector<const GroundFunction*> vals;
        for (int c : chosen) {
            anchor.zero_cover.push_back(zs[std::size_t(c)]);
            exprs.push_back(pair_seps[std::size_t(c)].expr);
            vals.push_back(&pair_seps[std::size_t(c)].values);
        }
        anchor.mean = average(exprs);
        anchor.mean_values = detail::mean_of(vals);

        Rat threshold(4L * anchor.k - 3, 4L * anchor.k); // 1 - 3/(4k)
        OperatingFn pin = ramp(threshold, Rat(1), provider);
        anchor.pinned = ConeExpr::comp(pin, anchor.mean);
        anchor.pinned_values = detail::apply_op(pin, anchor.mean_values);
        out.anchors.push_back(std::move(anchor));
    }

    // High regions: each pinned separator reaches 3/4 around its own y.
    std::vector<std::vector<int>> high_regions;
    high_regions.reserve(out.anchors.size());
    for (const auto& anchor : out.anchors) {
        std::vector<int> region;
        for (int z = 0; z < p.size(); ++z)
            if (anchor.pinned_values[z] >= three_quarters) region.push_back(z);
        high_regions.push_back(std::move(region));
    }
    std::vector<int> chosen = select_cover(p, os, high_regions);

    out.l = int(chosen.size());
    std::vector<ConeExprPtr> exprs;
    std::vector<const GroundFunction*> vals;
    for (int c : chosen) {
        out.one_cover.push_back(os[std::size_t(c)]);
        exprs.push_back(out.anchors[std::size_t(c)].pinned);
        vals.push_back(&out.anchors[std::size_t(c)].pinned_values);
    }
    out.mean = average(exprs);
    out.mean_values = detail::mean_of(vals);

    OperatingFn lift = ramp(Rat(0), Rat(3, 4L * out.l), provider);
    out.expr = ConeExpr::comp(lift, out.mean);
    out.values = detail::apply_op(lift, out.mean_values);
    return out;
}

inline ConeExprPtr separate_sets(const Poset& p, const Family& s,
                                 const std::vector<int>& zero_set,
                                 const std::vector<int>& one_set,
                                 RampProvider provider = RampProvider::pl) {
    return separate_sets_traced(p, s, zero_set, one_set, provider).expr;
}

struct LevelReport {
    int index = 0;             // level i
    std::vector<int> zero_set; // elements with f <= i/n
    std::vector<int> one_set;  // elements with f >= (i+1)/n
    ConeExprPtr expr;          // exactly 0 on zero_set, 1 on one_set
    GroundFunction values;
};

// The constructed approximant with its certificate and per-level data.
// Invariants: error <= bound, and expr replays to values exactly.
struct ApproxReport {
    GroundFunction target;
    int n = 1;
    Rat bound;
    Rat error;
    ConeExprPtr expr;
    GroundFunction values;
    std::vector<LevelReport> levels;
};

namespace detail {

inline void require_isotone_target(const Poset& p, const GroundFunction& f) {
    require_same_carrier(p, f);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(a, b) && f[a] > f[b]) throw NotIsotone(-1, a, b);
}

inline void require_generates(const Poset& p, const Family& s) {
    GeneratesResult g = generates(p, s);
    if (!g) throw DoesNotGenerate(g.a, g.b, g.reason);
}

inline ApproxReport constant_report(const Poset& p, const GroundFunction& f, int n,
                                    const Rat& bound) {
    ApproxReport rep;
    rep.target = f;
    rep.n = n;
    rep.bound = bound;
    rep.error = Rat(0);
    rep.expr = scale_shift(ConeExpr::gen(0), Rat(0), f[0]);
    rep.values = f;
    return rep;
}

} // namespace detail

// Approximates a normalized isotone target (min 0, max 1; constants are
// exempt) to within 1/n in sup norm. Level i separates the elements at or
// below i/n from those at or above (i+1)/n; the approximant is the average
// of the n level separators. Elements sitting exactly on a j/n level are
// reproduced exactly.
inline ApproxReport approximate_normalized(const Poset& p, const Family& s,
                                           const GroundFunction& f, int n,
                                           RampProvider provider = RampProvider::pl) {
    if (n < 1) throw Error("level count n must be >= 1");
    detail::require_isotone_target(p, f);
    if (!f.is_constant() && (f.min_value() != Rat(0) || f.max_value() != Rat(1)))
        throw NotNormalized("target must be constant or have min 0 and max 1 (got min " +
                            f.min_value().str() + ", max " + f.max_value().str() + ")");
    detail::require_generates(p, s);

    if (f.is_constant()) return detail::constant_report(p, f, n, Rat(1, n));

    ApproxReport rep;
    rep.target = f;
    rep.n = n;
    rep.bound = Rat(1, n);

    std::vector<ConeExprPtr> exprs;
    std::vector<const GroundFunction*> vals;
    for (int i = 0; i < n; ++i) {
        Rat lo(i, n), hi(i + 1, n);
        LevelReport level;
        level.index = i;
        for (int m = 0; m < p.size(); ++m) {
            if (f[m] <= lo) level.zero_set.push_back(m);
            if (f[m] >= hi) level.one_set.push_back(m);
        }
        SetSeparation sep = separate_sets_traced(p, s, level.zero_set, level.one_set, provider);
        level.expr = sep.expr;
        level.values = std::move(sep.values);
        rep.levels.push_back(std::move(level));
    }
    for (const LevelReport& level : rep.levels) {
        exprs.push_back(level.expr);
        vals.push_back(&level.values);
    }
    rep.expr = average(exprs);
    rep.values = detail::mean_of(vals);
    rep.error = sup_dist(f, rep.values);
    return rep;
}

// General entry point: rescales the target to [0, 1], picks
// n = ceil((max - min) / eps), approximates, and maps the result back.
// The guaranteed bound (max - min) / n is at most eps.
inline ApproxReport approximate(const Poset& p, const Family& s, const GroundFunction& f,
                                const Rat& eps, RampProvider provider = RampProvider::pl) {
    if (eps <= Rat(0)) throw Error("eps must be positive, got " + eps.str());
    detail::require_isotone_target(p, f);
    detail::require_generates(p, s);

    if (f.is_constant()) return detail::constant_report(p, f, 1, Rat(0));

    Rat lo = f.min_value();
    Rat scale = f.max_value() - lo;
    Int n_int = (scale / eps).ceil();
    if (!n_int.fits_sint_p() || n_int > 1000000)
        throw Error("eps " + eps.str() + " needs " + n_int.get_str() + " levels; too small");
    int n = int(n_int.get_si());

    std::vector<Rat> scaled;
    scaled.reserve(std::size_t(f.size()));
    for (int m = 0; m < p.size(); ++m) scaled.push_back((f[m] - lo) / scale);

    ApproxReport rep = approximate_normalized(p, s, GroundFunction(std::move(scaled)), n, provider);
    rep.target = f;
    rep.bound = scale / Rat(n);
    rep.expr = scale_shift(rep.expr, scale, lo);

    std::vector<Rat> back;
    back.reserve(std::size_t(f.size()));
    for (int m = 0; m < p.size(); ++m) back.push_back(lo + scale * rep.values[m]);
    rep.values = GroundFunction(std::move(back));
    rep.error = sup_dist(f, rep.values);
    return rep;
}

} // namespace isotone
