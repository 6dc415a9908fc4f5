#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "isotone/errors.hpp"
#include "isotone/funcspace.hpp"
#include "isotone/pl.hpp"

namespace isotone {

class ConeExpr;
using ConeExprPtr = std::shared_ptr<const ConeExpr>;

// Membership certificate for the closure of a family under binary sums and
// composition with non-decreasing operating functions. Immutable tree;
// shared subtrees are allowed and evaluation is pure.
class ConeExpr {
public:
    enum class Kind { gen, sum, comp };

    static ConeExprPtr gen(int index) {
        if (index < 0) throw BadGeneratorIndex(index, -1);
        ConeExpr e(Kind::gen);
        e.index_ = index;
        return wrap(std::move(e));
    }

    static ConeExprPtr sum(ConeExprPtr left, ConeExprPtr right) {
        if (!left || !right) throw EmptyList();
        ConeExpr e(Kind::sum);
        e.left_ = std::move(left);
        e.right_ = std::move(right);
        return wrap(std::move(e));
    }

    static ConeExprPtr comp(OperatingFn op, ConeExprPtr arg) {
        if (!arg) throw EmptyList();
        if (!op.is_nondecreasing())
            throw NotNondecreasing("operating function in a certificate must be non-decreasing");
        ConeExpr e(Kind::comp);
        e.op_ = std::move(op);
        e.arg_ = std::move(arg);
        return wrap(std::move(e));
    }

    Kind kind() const { return kind_; }
    int gen_index() const { return index_; }
    const ConeExprPtr& left() const { return left_; }
    const ConeExprPtr& right() const { return right_; }
    const ConeExprPtr& arg() const { return arg_; }
    const OperatingFn& op() const { return *op_; }

private:
    explicit ConeExpr(Kind k) : kind_(k) {}

    static ConeExprPtr wrap(ConeExpr&& e) {
        return std::shared_ptr<const ConeExpr>(new ConeExpr(std::move(e)));
    }

    Kind kind_;
    int index_ = -1;
    ConeExprPtr left_, right_, arg_;
    std::optional<OperatingFn> op_;
};

// Pointwise evaluation over the carrier: Gen reads the member, Sum adds
// value vectors, Comp applies the operating function to each value.
inline GroundFunction eval_expr(const Poset& p, const Family& s, const ConeExpr& e) {
    require_same_carrier(p, s);
    switch (e.kind()) {
    case ConeExpr::Kind::gen:
        return s.member(e.gen_index()); // throws BadGeneratorIndex when out of range
    case ConeExpr::Kind::sum: {
        GroundFunction l = eval_expr(p, s, *e.left());
        GroundFunction r = eval_expr(p, s, *e.right());
        std::vector<Rat> out;
        out.reserve(std::size_t(p.size()));
        for (int i = 0; i < p.size(); ++i) out.push_back(l[i] + r[i]);
        return GroundFunction(std::move(out));
    }
    case ConeExpr::Kind::comp: {
        GroundFunction a = eval_expr(p, s, *e.arg());
        std::vector<Rat> out;
        out.reserve(std::size_t(p.size()));
        for (int i = 0; i < p.size(); ++i) out.push_back(e.op()(a[i]));
        return GroundFunction(std::move(out));
    }
    }
    throw Error("unreachable expression kind");
}

inline GroundFunction eval_expr(const Poset& p, const Family& s, const ConeExprPtr& e) {
    if (!e) throw EmptyList();
    return eval_expr(p, s, *e);
}

// scale * e + shift, realized as composition with the affine map
// t -> scale * t + shift. Requires scale >= 0 (the map must be
// non-decreasing). Identity maps are elided.
inline ConeExprPtr scale_shift(ConeExprPtr e, const Rat& scale, const Rat& shift) {
    if (!e) throw EmptyList();
    if (scale < Rat(0)) throw NegativeScale(scale.str());
    if (scale == Rat(1) && shift == Rat(0)) return e;
    return ConeExpr::comp(OperatingFn(PLFunction::affine(scale, shift)), std::move(e));
}

// Arithmetic mean: nested binary sums followed by a 1/k rescale.
inline ConeExprPtr average(const std::vector<ConeExprPtr>& exprs) {
    if (exprs.empty()) throw EmptyList();
    ConeExprPtr acc = exprs.front();
    for (std::size_t i = 1; i < exprs.size(); ++i) acc = ConeExpr::sum(acc, exprs[i]);
    return scale_shift(acc, Rat(1, long(exprs.size())), Rat(0));
}

struct CertifyResult {
    bool ok = false;
    int first_mismatch = -1; // first differing element when not ok

    explicit operator bool() const { return ok; }
};

// Replays the certificate and compares with the claimed values exactly.
inline CertifyResult certify(const Poset& p, const Family& s, const ConeExpr& e,
                             const GroundFunction& claimed) {
    require_same_carrier(p, claimed);
    GroundFunction got = eval_expr(p, s, e);
    for (int i = 0; i < p.size(); ++i)
        if (got[i] != claimed[i]) return {false, i};
    return {true, -1};
}

inline CertifyResult certify(const Poset& p, const Family& s, const ConeExprPtr& e,
                             const GroundFunction& claimed) {
    if (!e) throw EmptyList();
    return certify(p, s, *e, claimed);
}

inline std::size_t node_count(const ConeExpr& e) {
    switch (e.kind()) {
    case ConeExpr::Kind::gen: return 1;
    case ConeExpr::Kind::sum: return 1 + node_count(*e.left()) + node_count(*e.right());
    case ConeExpr::Kind::comp: return 1 + node_count(*e.arg());
    }
    return 0;
}

inline std::size_t node_count(const ConeExprPtr& e) { return e ? node_count(*e) : 0; }

} // namespace isotone
