#pragma once

#include <algorithm>
#include <utility>
#include <variant>
#include <vector>

#include "isotone/errors.hpp"
#include "isotone/rational.hpp"

namespace isotone {

// Continuous non-decreasing piecewise-linear map R -> R with exact rational
// breakpoints. Outside the breakpoint range the function continues with
// left_slope / right_slope; with no breakpoints it is the affine map
// t -> intercept + slope * t. Values are kept in canonical form: no
// collinear breakpoints, and affine functions always use the empty
// breakpoint representation, so equal functions compare equal memberwise.
class PLFunction {
public:
    struct Breakpoint {
        Rat x, y;
        bool operator==(const Breakpoint&) const = default;
    };

    static PLFunction affine(const Rat& slope, const Rat& intercept) {
        if (slope < Rat(0)) throw NotNondecreasing("affine slope must be >= 0, got " + slope.str());
        PLFunction f;
        f.left_slope_ = slope;
        f.right_slope_ = slope;
        f.intercept_ = intercept;
        return f;
    }

    static PLFunction constant(const Rat& c) { return affine(Rat(0), c); }
    static PLFunction identity() { return affine(Rat(1), Rat(0)); }

    // 0 on (-inf, a], affine on [a, b], 1 on [b, +inf).
    static PLFunction ramp(const Rat& a, const Rat& b) {
        if (!(a < b)) throw DegenerateRamp(a.str(), b.str());
        PLFunction f;
        f.bps_ = {{a, Rat(0)}, {b, Rat(1)}};
        return f;
    }

    // Validates (x strictly increasing, non-decreasing everywhere) and
    // canonicalizes. left/right slopes apply beyond the breakpoint range.
    static PLFunction from_breakpoints(std::vector<Breakpoint> bps, const Rat& left_slope,
                                       const Rat& right_slope) {
        if (bps.empty())
            throw MalformedFunction("from_breakpoints needs at least one breakpoint; use affine()");
        for (std::size_t i = 0; i + 1 < bps.size(); ++i)
            if (!(bps[i].x < bps[i + 1].x))
                throw MalformedFunction("breakpoint x-coordinates must be strictly increasing");
        if (!is_nondecreasing_data(bps, left_slope, right_slope))
            throw NotNondecreasing("piecewise-linear data has a negative slope");
        PLFunction f;
        f.bps_ = std::move(bps);
        f.left_slope_ = left_slope;
        f.right_slope_ = right_slope;
        f.canonicalize();
        return f;
    }

    // Raw check used by validation and by loaders: given structurally sound
    // data (x strictly increasing), is the described function non-decreasing?
    static bool is_nondecreasing_data(const std::vector<Breakpoint>& bps, const Rat& left_slope,
                                      const Rat& right_slope) {
        if (left_slope < Rat(0) || right_slope < Rat(0)) return false;
        for (std::size_t i = 0; i + 1 < bps.size(); ++i)
            if (bps[i + 1].y < bps[i].y) return false;
        return true;
    }

    bool is_nondecreasing() const {
        return is_affine() ? left_slope_ >= Rat(0)
                           : is_nondecreasing_data(bps_, left_slope_, right_slope_);
    }

    bool is_affine() const { return bps_.empty(); }

    const std::vector<Breakpoint>& breakpoints() const { return bps_; }
    const Rat& left_slope() const { return left_slope_; }
    const Rat& right_slope() const { return right_slope_; }

    // Affine form only: f(t) = intercept + slope * t, slope == left_slope.
    const Rat& intercept() const { return intercept_; }
    const Rat& slope() const { return left_slope_; }

    Rat operator()(const Rat& t) const {
        if (is_affine()) return intercept_ + left_slope_ * t;
        if (t <= bps_.front().x) return bps_.front().y + left_slope_ * (t - bps_.front().x);
        if (t >= bps_.back().x) return bps_.back().y + right_slope_ * (t - bps_.back().x);
        std::size_t i = 1;
        while (bps_[i].x < t) ++i; // t < back().x, so this stays in range
        const Breakpoint& lo = bps_[i - 1];
        const Breakpoint& hi = bps_[i];
        return lo.y + (hi.y - lo.y) * (t - lo.x) / (hi.x - lo.x);
    }

    bool operator==(const PLFunction&) const = default;

    // Exact composition outer(inner(t)) as a PLFunction. Result breakpoints
    // are inner's breakpoints plus the preimages under inner of outer's
    // breakpoints (where inner is strictly increasing), then canonicalized.
    friend PLFunction compose(const PLFunction& outer, const PLFunction& inner) {
        // Constant inner collapses immediately.
        if (inner.is_affine() && inner.left_slope_ == Rat(0))
            return constant(outer(inner.intercept_));

        std::vector<Rat> cuts;
        for (const Breakpoint& bp : inner.bps_) cuts.push_back(bp.x);

        // Preimages of outer's breakpoints through every strictly
        // increasing piece of inner.
        if (inner.is_affine()) {
            for (const Breakpoint& bp : outer.bps_)
                cuts.push_back((bp.x - inner.intercept_) / inner.left_slope_);
        } else {
            const Breakpoint& first = inner.bps_.front();
            const Breakpoint& last = inner.bps_.back();
            if (inner.left_slope_ > Rat(0))
                for (const Breakpoint& bp : outer.bps_)
                    if (bp.x <= first.y) cuts.push_back(first.x + (bp.x - first.y) / inner.left_slope_);
            if (inner.right_slope_ > Rat(0))
                for (const Breakpoint& bp : outer.bps_)
                    if (bp.x >= last.y) cuts.push_back(last.x + (bp.x - last.y) / inner.right_slope_);
            for (std::size_t i = 0; i + 1 < inner.bps_.size(); ++i) {
                const Breakpoint& lo = inner.bps_[i];
                const Breakpoint& hi = inner.bps_[i + 1];
                if (lo.y == hi.y) continue; // plateau, composition constant there
                Rat seg_slope = (hi.y - lo.y) / (hi.x - lo.x);
                for (const Breakpoint& bp : outer.bps_)
                    if (lo.y <= bp.x && bp.x <= hi.y)
                        cuts.push_back(lo.x + (bp.x - lo.y) / seg_slope);
            }
        }

        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        if (cuts.empty()) {
            // inner is affine and strictly increasing, outer is affine
            PLFunction f;
            f.left_slope_ = outer.left_slope_ * inner.left_slope_;
            f.right_slope_ = f.left_slope_;
            f.intercept_ = outer(inner(Rat(0)));
            return f;
        }

        // Between consecutive cuts both inner and outer(inner(.)) are affine,
        // so sampling the cut points pins the function down exactly. On the
        // tails the slopes multiply (a zero inner slope zeroes the product,
        // which is also correct: the composition is constant there).
        PLFunction f;
        for (const Rat& t : cuts) f.bps_.push_back({t, outer(inner(t))});
        f.left_slope_ = inner.left_slope_ * outer.slope_left_of(inner(cuts.front()));
        f.right_slope_ = inner.right_slope_ * outer.slope_right_of(inner(cuts.back()));
        f.canonicalize();
        return f;
    }

private:
    PLFunction() : left_slope_(0), right_slope_(0), intercept_(0) {}

    // Slope of the piece covering (y - eps, y].
    Rat slope_left_of(const Rat& y) const {
        if (is_affine()) return left_slope_;
        std::size_t i = 0;
        while (i < bps_.size() && bps_[i].x < y) ++i; // first x >= y
        if (i == 0) return left_slope_;
        if (i == bps_.size()) return right_slope_;
        return (bps_[i].y - bps_[i - 1].y) / (bps_[i].x - bps_[i - 1].x);
    }

    // Slope of the piece covering [y, y + eps).
    Rat slope_right_of(const Rat& y) const {
        if (is_affine()) return left_slope_;
        std::size_t i = 0;
        while (i < bps_.size() && bps_[i].x <= y) ++i; // first x > y
        if (i == 0) return left_slope_;
        if (i == bps_.size()) return right_slope_;
        return (bps_[i].y - bps_[i - 1].y) / (bps_[i].x - bps_[i - 1].x);
    }

    static Rat seg_slope(const Breakpoint& a, const Breakpoint& b) {
        return (b.y - a.y) / (b.x - a.x);
    }

    // Drop collinear breakpoints; collapse to the affine representation when
    // no genuine kink remains.
    void canonicalize() {
        while (bps_.size() >= 2 && seg_slope(bps_[0], bps_[1]) == left_slope_)
            bps_.erase(bps_.begin());
        while (bps_.size() >= 2 &&
               seg_slope(bps_[bps_.size() - 2], bps_.back()) == right_slope_)
            bps_.pop_back();
        for (std::size_t i = 1; i + 1 < bps_.size();) {
            if (seg_slope(bps_[i - 1], bps_[i]) == seg_slope(bps_[i], bps_[i + 1]))
                bps_.erase(bps_.begin() + i);
            else
                ++i;
        }
        if (bps_.size() == 1 && left_slope_ == right_slope_) {
            intercept_ = bps_[0].y - left_slope_ * bps_[0].x;
            bps_.clear();
        }
        if (!bps_.empty()) intercept_ = Rat(0);
    }

    std::vector<Breakpoint> bps_;
    Rat left_slope_;
    Rat right_slope_;
    Rat intercept_; // affine form only, 0 otherwise
};

// C1 ramp alternative to the piecewise-linear one: 0 up to a, 1 from b on,
// and the cubic 3u^2 - 2u^3 in between (u the normalized position in [a, b]).
// Rational in, rational out.
class Smoothstep {
public:
    Smoothstep(const Rat& a, const Rat& b) : a_(a), b_(b) {
        if (!(a < b)) throw DegenerateRamp(a.str(), b.str());
    }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    Rat operator()(const Rat& t) const {
        if (t <= a_) return Rat(0);
        if (t >= b_) return Rat(1);
        Rat u = (t - a_) / (b_ - a_);
        return u * u * (Rat(3) - Rat(2) * u);
    }

    bool operator==(const Smoothstep&) const = default;

private:
    Rat a_, b_;
};

// A member of the operating family: non-decreasing, continuous, and
// rationality-preserving. Either piecewise-linear or a smoothstep ramp.
class OperatingFn {
public:
    OperatingFn(PLFunction f) : fn_(std::move(f)) {}
    OperatingFn(Smoothstep s) : fn_(std::move(s)) {}

    bool is_pl() const { return std::holds_alternative<PLFunction>(fn_); }
    const PLFunction& pl() const { return std::get<PLFunction>(fn_); }
    const Smoothstep& smoothstep() const { return std::get<Smoothstep>(fn_); }

    Rat operator()(const Rat& t) const {
        return is_pl() ? pl()(t) : smoothstep()(t);
    }

    bool is_nondecreasing() const {
        return is_pl() ? pl().is_nondecreasing() : true; // smoothstep: by construction
    }

    bool operator==(const OperatingFn&) const = default;

private:
    std::variant<PLFunction, Smoothstep> fn_;
};

enum class RampProvider { pl, smoothstep };

// H with H = 0 on (-inf, a] and H = 1 on [b, +inf); the transition is affine
// for the pl provider and cubic for smoothstep.
inline OperatingFn ramp(const Rat& a, const Rat& b, RampProvider provider = RampProvider::pl) {
    if (provider == RampProvider::pl) return OperatingFn(PLFunction::ramp(a, b));
    return OperatingFn(Smoothstep(a, b));
}

inline Rat eval_op(const OperatingFn& h, const Rat& t) { return h(t); }

} // namespace isotone
