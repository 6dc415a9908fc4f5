#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "isotone/errors.hpp"

namespace isotone {

using Int = mpz_class;

// Exact arbitrary-precision rational. Thin value wrapper over GMP's
// mpq_class that keeps every value canonical (gcd-reduced, positive
// denominator) and keeps gmpxx expression templates out of client code.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {} // NOLINT: implicit by design, mirrors integer literals
    Rat(int n) : v_(n) {}

    Rat(long num, long den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    explicit Rat(const Int& n) : v_(n) {}

    Rat(const Int& num, const Int& den) {
        if (den == 0) throw Error("rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    // Accepts "p", "-p" or "p/q" with decimal digits and q > 0 after
    // canonicalization. Anything else (whitespace, signs inside, q = 0)
    // is a ParseError.
    static Rat parse(const std::string& s) {
        if (!looks_like_rational(s)) throw ParseError("invalid rational literal: '" + s + "'");
        mpq_class v;
        if (v.set_str(s, 10) != 0) throw ParseError("invalid rational literal: '" + s + "'");
        if (v.get_den() == 0) throw ParseError("rational literal with zero denominator: '" + s + "'");
        v.canonicalize();
        Rat r;
        r.v_ = std::move(v);
        return r;
    }

    // Canonical form: "p/q" with q > 1, plain "p" otherwise.
    std::string str() const { return v_.get_str(); }

    Int numer() const { return v_.get_num(); }
    Int denom() const { return v_.get_den(); }

    bool is_integer() const { return v_.get_den() == 1; }
    int sgn() const { return ::sgn(v_); }

    Rat abs() const {
        Rat r;
        r.v_ = ::abs(v_);
        return r;
    }

    Int floor() const {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    Int ceil() const {
        Int q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }

    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.v_ == 0) throw Error("rational division by zero");
        return Rat(mpq_class(a.v_ / b.v_));
    }

    Rat operator-() const { return Rat(mpq_class(-v_)); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    Rat& operator/=(const Rat& o) {
        if (o.v_ == 0) throw Error("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

    const mpq_class& raw() const { return v_; }

private:
    explicit Rat(mpq_class v) : v_(std::move(v)) {}

    static bool looks_like_rational(const std::string& s) {
        std::size_t i = 0;
        if (i < s.size() && s[i] == '-') ++i;
        std::size_t digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
        if (digits == 0) return false;
        if (i == s.size()) return true;
        if (s[i] != '/') return false;
        ++i;
        digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') { ++i; ++digits; }
        return digits > 0 && i == s.size();
    }

    mpq_class v_;
};

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace isotone
