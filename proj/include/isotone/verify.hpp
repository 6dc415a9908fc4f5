#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "isotone/cone.hpp"
#include "isotone/construct.hpp"
#include "isotone/errors.hpp"
#include "isotone/funcspace.hpp"
#include "isotone/pl.hpp"
#include "isotone/poset.hpp"
#include "isotone/rational.hpp"

namespace isotone {

// Raises values along the order until no pair decreases: f(b) becomes the
// max of f(a) over all a <= b, iterated to a fixpoint. The result is
// isotone and pointwise >= the input.
inline std::vector<long> monotone_repair(const Poset& p, std::vector<long> raw) {
    if (int(raw.size()) != p.size()) throw CarrierMismatch("value count does not match poset size");
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < p.size(); ++a)
            for (int b = 0; b < p.size(); ++b)
                if (p.leq(a, b) && raw[std::size_t(b)] < raw[std::size_t(a)]) {
                    raw[std::size_t(b)] = raw[std::size_t(a)];
                    changed = true;
                }
    }
    return raw;
}

// A random isotone function with values in {0, 1/levels, ..., 1}: uniform
// raw levels followed by a monotone repair. Deterministic per seed.
inline GroundFunction random_isotone(const Poset& p, int levels, std::uint64_t seed) {
    if (levels < 1) throw Error("level count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<long> raw;
    raw.reserve(std::size_t(p.size()));
    for (int i = 0; i < p.size(); ++i) raw.push_back(long(rng() % std::uint64_t(levels + 1)));
    raw = monotone_repair(p, std::move(raw));
    std::vector<Rat> values;
    values.reserve(raw.size());
    for (long v : raw) values.emplace_back(v, long(levels));
    return GroundFunction(std::move(values));
}

// Direct transcription of the generated-preorder definition, kept separate
// from generated_preorder on purpose: the suite compares the two as
// independent implementations.
inline Relation naive_generated_preorder(const Poset& p, const Family& s) {
    if (s.empty()) throw EmptyFamily();
    Relation r(p.size());
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y) {
            bool all_le = true;
            for (int i = 0; i < s.size(); ++i)
                if (!(s.member(i)[x] <= s.member(i)[y])) all_le = false;
            r.set(x, y, all_le);
        }
    return r;
}

struct SuiteConfig {
    std::uint64_t seed = 42;
    int trials = 200;
    int max_poset_size = 30;
    std::vector<int> n_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    Rat density_lo = Rat(0);
    Rat density_hi = Rat(1);
    RampProvider provider = RampProvider::pl;
};

struct Failure {
    int trial = 0;
    std::string property;
    std::string counterexample;
};

struct SuiteOutcome {
    int trials_run = 0;
    std::vector<Failure> failures;
    // max over all checked instances of (sup error) * n; the bound says
    // this never exceeds 1.
    Rat max_observed_error_ratio = Rat(0);
};

namespace detail {

// splitmix64 finalizer; decorrelates per-trial generator seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

inline Rat unit_rat(std::mt19937_64& rng) {
    return Rat(long(rng() >> 11), 1L << 53);
}

inline std::string describe_instance(const Poset& p, std::uint64_t poset_seed) {
    return "poset n=" + std::to_string(p.size()) + " seed=" + std::to_string(poset_seed);
}

struct SuiteRecorder {
    int trial = 0;
    std::string instance;
    std::vector<Failure>* failures = nullptr;

    void fail(const std::string& property, const std::string& detail) const {
        failures->push_back({trial, property, instance + (detail.empty() ? "" : "; " + detail)});
    }
    void check(bool ok, const std::string& property, const std::string& detail) const {
        if (!ok) fail(property, detail);
    }
};

inline bool in_unit_interval(const GroundFunction& f) {
    for (int i = 0; i < f.size(); ++i)
        if (f[i] < Rat(0) || f[i] > Rat(1)) return false;
    return true;
}

// Checks every guarantee of a set-separation instance against its trace.
inline void check_set_separation(const SuiteRecorder& rec, const Poset& p, const Family& s,
                                 const std::vector<int>& zero_set, const std::vector<int>& one_set,
                                 const SetSeparation& sep) {
    std::string where = "zero-set size " + std::to_string(zero_set.size()) + ", one-set size " +
                        std::to_string(one_set.size());
    for (int x : zero_set)
        rec.check(sep.values[x] == Rat(0), "separation_zero",
                  where + "; value at " + std::to_string(x) + " is " + sep.values[x].str());
    for (int y : one_set)
        rec.check(sep.values[y] == Rat(1), "separation_one",
                  where + "; value at " + std::to_string(y) + " is " + sep.values[y].str());
    rec.check(in_unit_interval(sep.values), "separation_range", where);
    rec.check(is_isotone(p, sep.values), "separation_isotone", where);
    rec.check(bool(certify(p, s, sep.expr, sep.values)), "separation_replay", where);

    if (sep.degenerate) return;
    for (const auto& anchor : sep.anchors) {
        Rat threshold(4L * anchor.k - 3, 4L * anchor.k);
        for (int x : zero_set)
            rec.check(anchor.mean_values[x] <= threshold, "separation_low_margin",
                      where + "; anchor " + std::to_string(anchor.y) + " mean at " +
                          std::to_string(x) + " is " + anchor.mean_values[x].str() +
                          " > " + threshold.str());
        rec.check(anchor.mean_values[anchor.y] == Rat(1), "separation_anchor_one",
                  where + "; anchor " + std::to_string(anchor.y));
        for (int x : zero_set)
            rec.check(anchor.pinned_values[x] == Rat(0), "separation_pinned_zero",
                      where + "; anchor " + std::to_string(anchor.y));
    }
    Rat floor_margin(3, 4L * sep.l);
    for (int x : zero_set)
        rec.check(sep.mean_values[x] == Rat(0), "separation_high_mean_zero", where);
    for (int y : one_set)
        rec.check(sep.mean_values[y] >= floor_margin, "separation_high_margin",
                  where + "; mean at " + std::to_string(y) + " is " + sep.mean_values[y].str() +
                      " < " + floor_margin.str());
}

} // namespace detail

// Randomized self-check of the whole construction. Per trial: a random
// poset with its upset generators (odd trials add two random isotone
// members), then
//   - generated_preorder against the naive definition, generation and
//     point separation of the upset family;
//   - point separation certificates for every pair y not<= x;
//   - one set-separation instance with a valid precondition, including the
//     internal margins the construction promises;
//   - the approximation bound, boundary exactness and per-level contract
//     for every n in n_values, with every certificate replayed exactly.
// Failures are returned as data; the run itself only throws on internal
// errors it cannot attribute to a property.
inline SuiteOutcome run_suite(const SuiteConfig& cfg) {
    SuiteOutcome out;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::mt19937_64 rng(detail::mix_seed(cfg.seed, std::uint64_t(trial)));
        int size = 1 + int(rng() % std::uint64_t(cfg.max_poset_size));
        Rat density = cfg.density_lo + (cfg.density_hi - cfg.density_lo) * detail::unit_rat(rng);
        std::uint64_t poset_seed = rng();
        Poset p = Poset::random(size, density, poset_seed);

        // Odd trials put two random members in front of the indicators: the
        // lowest-index separating member is then usually one of them, so the
        // pipeline sees genuinely intermediate values instead of pure 0/1
        // stages and the thresholds actually matter.
        Family ups = upset_generators(p);
        std::vector<GroundFunction> members;
        std::vector<std::string> names;
        if (trial % 2 == 1) {
            for (int extra = 0; extra < 2; ++extra) {
                members.push_back(random_isotone(p, 4, rng()));
                names.push_back("rand" + std::to_string(extra));
            }
        }
        members.insert(members.end(), ups.members().begin(), ups.members().end());
        names.insert(names.end(), ups.names().begin(), ups.names().end());
        Family s(p, members, names);

        detail::SuiteRecorder rec{trial, detail::describe_instance(p, poset_seed), &out.failures};

        // Preorder and generation properties.
        rec.check(generated_preorder(p, s) == naive_generated_preorder(p, s), "preorder_oracle",
                  "");
        GeneratesResult gen = generates(p, s);
        rec.check(bool(gen), "generates_upsets",
                  gen ? "" : "witness a=" + std::to_string(gen.a) + " b=" + std::to_string(gen.b));
        rec.check(!bool(gen) || separates_points(p, s), "generates_implies_separates", "");

        // Point separation for every admissible pair.
        for (int x = 0; x < p.size(); ++x)
            for (int y = 0; y < p.size(); ++y) {
                if (x == y || p.leq(y, x)) continue;
                std::string pair = "x=" + std::to_string(x) + " y=" + std::to_string(y);
                ConeExprPtr e = separate_points(p, s, x, y, cfg.provider);
                GroundFunction v = eval_expr(p, s, e);
                rec.check(v[x] == Rat(0), "point_separation_zero", pair + "; got " + v[x].str());
                rec.check(v[y] == Rat(1), "point_separation_one", pair + "; got " + v[y].str());
                rec.check(detail::in_unit_interval(v), "point_separation_range", pair);
                rec.check(is_isotone(p, v), "point_separation_isotone", pair);
            }

        // One set-separation instance with the precondition satisfied by
        // construction: pick a one-set, then draw the zero-set from the
        // elements below no member of it.
        std::vector<int> one_set;
        for (int m = 0; m < p.size(); ++m)
            if (rng() % 3 == 0) one_set.push_back(m);
        std::vector<char> forbidden(std::size_t(p.size()), 0);
        for (int y : one_set)
            for (int m = 0; m < p.size(); ++m)
                if (p.leq(y, m)) forbidden[std::size_t(m)] = 1;
        std::vector<int> zero_set;
        for (int m = 0; m < p.size(); ++m)
            if (!forbidden[std::size_t(m)] && rng() % 2 == 0) zero_set.push_back(m);
        detail::check_set_separation(rec, p, s, zero_set, one_set,
                                     separate_sets_traced(p, s, zero_set, one_set, cfg.provider));

        // Approximation for every requested n on a normalized target.
        GroundFunction target = random_isotone(p, 1 + int(rng() % 10), rng());
        if (!target.is_constant()) {
            Rat lo = target.min_value();
            Rat span = target.max_value() - lo;
            for (int m = 0; m < p.size(); ++m) target[m] = (target[m] - lo) / span;
        }
        for (int n : cfg.n_values) {
            std::string where = "n=" + std::to_string(n);
            ApproxReport rep = approximate_normalized(p, s, target, n, cfg.provider);

            rec.check(rep.error <= Rat(1, n), "error_bound",
                      where + "; error " + rep.error.str());
            Rat ratio = rep.error * Rat(n);
            if (ratio > out.max_observed_error_ratio) out.max_observed_error_ratio = ratio;

            for (int m = 0; m < p.size(); ++m) {
                Rat scaled = target[m] * Rat(n);
                if (scaled.is_integer())
                    rec.check(rep.values[m] == target[m], "boundary_exact",
                              where + "; element " + std::to_string(m) + " target " +
                                  target[m].str() + " got " + rep.values[m].str());
            }

            for (const LevelReport& level : rep.levels) {
                Rat lo(level.index, n), hi(level.index + 1, n);
                for (int m = 0; m < p.size(); ++m) {
                    bool in_zero = std::find(level.zero_set.begin(), level.zero_set.end(), m) !=
                                   level.zero_set.end();
                    bool in_one = std::find(level.one_set.begin(), level.one_set.end(), m) !=
                                  level.one_set.end();
                    rec.check(in_zero == (target[m] <= lo), "level_zero_membership",
                              where + "; level " + std::to_string(level.index));
                    rec.check(in_one == (target[m] >= hi), "level_one_membership",
                              where + "; level " + std::to_string(level.index));
                    if (in_zero)
                        rec.check(level.values[m] == Rat(0), "level_zero_value", where);
                    if (in_one)
                        rec.check(level.values[m] == Rat(1), "level_one_value", where);
                }
                rec.check(detail::in_unit_interval(level.values), "level_range", where);
                rec.check(is_isotone(p, level.values), "level_isotone", where);
            }

            rec.check(bool(certify(p, s, rep.expr, rep.values)), "approx_replay", where);
            rec.check(is_isotone(p, rep.values), "approx_isotone", where);
        }

        ++out.trials_run;
    }
    return out;
}

} // namespace isotone
