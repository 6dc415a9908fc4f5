#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isotone/errors.hpp"
#include "isotone/poset.hpp"
#include "isotone/rational.hpp"

namespace isotone {

// A function from the carrier poset to the rationals, stored as one exact
// value per element. The carrier is implied by context; operations that pair
// functions with a poset or with each other check sizes and throw
// CarrierMismatch on disagreement.
class GroundFunction {
public:
    GroundFunction() = default;
    explicit GroundFunction(std::vector<Rat> values) : values_(std::move(values)) {}

    static GroundFunction constant(int n, const Rat& c) {
        return GroundFunction(std::vector<Rat>(std::size_t(n), c));
    }

    int size() const { return int(values_.size()); }
    const Rat& operator[](int i) const { return values_[std::size_t(i)]; }
    Rat& operator[](int i) { return values_[std::size_t(i)]; }
    const std::vector<Rat>& values() const { return values_; }

    Rat min_value() const {
        require_nonempty();
        Rat m = values_[0];
        for (const Rat& v : values_) m = min(m, v);
        return m;
    }

    Rat max_value() const {
        require_nonempty();
        Rat m = values_[0];
        for (const Rat& v : values_) m = max(m, v);
        return m;
    }

    bool is_constant() const {
        for (const Rat& v : values_)
            if (v != values_[0]) return false;
        return true;
    }

    bool operator==(const GroundFunction&) const = default;

private:
    void require_nonempty() const {
        if (values_.empty()) throw CarrierMismatch("function over an empty carrier");
    }

    std::vector<Rat> values_;
};

inline void require_same_carrier(const Poset& p, const GroundFunction& f) {
    if (f.size() != p.size())
        throw CarrierMismatch("function has " + std::to_string(f.size()) +
                              " values but poset has " + std::to_string(p.size()) + " elements");
}

// true iff a <= b implies f(a) <= f(b).
inline bool is_isotone(const Poset& p, const GroundFunction& f) {
    require_same_carrier(p, f);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(a, b) && f[a] > f[b]) return false;
    return true;
}

// A finite family S of isotone functions over one carrier poset. Members are
// validated at construction; a non-isotone member is rejected with its index.
class Family {
public:
    Family(const Poset& p, std::vector<GroundFunction> members,
           std::vector<std::string> names = {})
        : carrier_size_(p.size()), members_(std::move(members)), names_(std::move(names)) {
        if (!names_.empty() && names_.size() != members_.size())
            throw CarrierMismatch("names must be empty or one per member");
        for (std::size_t i = 0; i < members_.size(); ++i) {
            require_same_carrier(p, members_[i]);
            for (int a = 0; a < p.size(); ++a)
                for (int b = 0; b < p.size(); ++b)
                    if (p.leq(a, b) && members_[i][a] > members_[i][b])
                        throw NotIsotone(int(i), a, b);
        }
    }

    int carrier_size() const { return carrier_size_; }
    int size() const { return int(members_.size()); }
    bool empty() const { return members_.empty(); }

    const GroundFunction& member(int i) const {
        if (i < 0 || i >= size()) throw BadGeneratorIndex(i, size());
        return members_[std::size_t(i)];
    }

    const std::vector<GroundFunction>& members() const { return members_; }
    const std::vector<std::string>& names() const { return names_; }

    std::string name(int i) const {
        return names_.empty() ? "member " + std::to_string(i) : names_[std::size_t(i)];
    }

private:
    int carrier_size_;
    std::vector<GroundFunction> members_;
    std::vector<std::string> names_;
};

inline void require_same_carrier(const Poset& p, const Family& s) {
    if (s.carrier_size() != p.size())
        throw CarrierMismatch("family carrier has " + std::to_string(s.carrier_size()) +
                              " elements but poset has " + std::to_string(p.size()));
}

// The preorder generated by S: x rel y iff f(x) <= f(y) for every member f.
// Reflexive and transitive by construction.
inline Relation generated_preorder(const Poset& p, const Family& s) {
    require_same_carrier(p, s);
    if (s.empty()) throw EmptyFamily();
    Relation r(p.size());
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y) {
            bool rel = true;
            for (int i = 0; i < s.size() && rel; ++i)
                rel = s.member(i)[x] <= s.member(i)[y];
            r.set(x, y, rel);
        }
    return r;
}

struct GeneratesResult {
    bool generates = false;
    int a = -1, b = -1;  // witness pair when generation fails
    std::string reason;

    explicit operator bool() const { return generates; }
};

// Does the preorder generated by S coincide with the poset's order? On
// failure the witness is a pair a not<= b that no member separates. Members
// are re-validated against this poset, since a family built elsewhere may
// not be isotone here.
inline GeneratesResult generates(const Poset& p, const Family& s) {
    require_same_carrier(p, s);
    if (s.empty()) throw EmptyFamily();
    for (int i = 0; i < s.size(); ++i)
        for (int a = 0; a < p.size(); ++a)
            for (int b = 0; b < p.size(); ++b)
                if (p.leq(a, b) && s.member(i)[a] > s.member(i)[b]) throw NotIsotone(i, a, b);

    for (const auto& [a, b] : p.not_leq_pairs()) {
        bool separated = false;
        for (int i = 0; i < s.size() && !separated; ++i)
            separated = s.member(i)[a] > s.member(i)[b];
        if (!separated)
            return {false, a, b,
                    "no member f has f(" + p.label(a) + ") > f(" + p.label(b) + ") although " +
                        p.label(a) + " is not below " + p.label(b)};
    }
    // Isotone members can never relate a true pair the wrong way, so the
    // generated preorder now equals the order exactly.
    return {true, -1, -1, ""};
}

// true iff for every x != y some member takes different values at x and y.
inline bool separates_points(const Poset& p, const Family& s) {
    require_same_carrier(p, s);
    if (s.empty()) throw EmptyFamily();
    for (int x = 0; x < p.size(); ++x)
        for (int y = x + 1; y < p.size(); ++y) {
            bool separated = false;
            for (int i = 0; i < s.size() && !separated; ++i)
                separated = s.member(i)[x] != s.member(i)[y];
            if (!separated) return false;
        }
    return true;
}

// Sup-norm distance max |f - g| over the carrier.
inline Rat sup_dist(const GroundFunction& f, const GroundFunction& g) {
    if (f.size() != g.size())
        throw CarrierMismatch("sup_dist over different carriers (" + std::to_string(f.size()) +
                              " vs " + std::to_string(g.size()) + " values)");
    Rat d(0);
    for (int i = 0; i < f.size(); ++i) d = max(d, (f[i] - g[i]).abs());
    return d;
}

// The canonical generating family: one 0/1 indicator of upset(a) per element.
// Each indicator is isotone, and for a not<= b the indicator of upset(b)
// separates the pair, so this family always generates the order.
inline Family upset_generators(const Poset& p) {
    std::vector<GroundFunction> members;
    std::vector<std::string> names;
    for (int a = 0; a < p.size(); ++a) {
        GroundFunction f = GroundFunction::constant(p.size(), Rat(0));
        for (int x : p.upset(a)) f[x] = Rat(1);
        members.push_back(std::move(f));
        names.push_back("up(" + p.label(a) + ")");
    }
    return Family(p, std::move(members), std::move(names));
}

} // namespace isotone
