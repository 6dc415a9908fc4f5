#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "isotone/errors.hpp"
#include "isotone/rational.hpp"

namespace isotone {

// Square boolean relation on {0, ..., n-1}, stored dense.
class Relation {
public:
    explicit Relation(int n, bool reflexive = false) : n_(n), bits_(std::size_t(n) * n, 0) {
        if (n < 0) throw IndexError("relation size must be >= 0");
        if (reflexive)
            for (int i = 0; i < n; ++i) set(i, i);
    }

    int size() const { return n_; }

    bool at(int a, int b) const { return bits_[std::size_t(a) * n_ + b] != 0; }
    void set(int a, int b, bool v = true) { bits_[std::size_t(a) * n_ + b] = v ? 1 : 0; }

    bool is_reflexive() const {
        for (int i = 0; i < n_; ++i)
            if (!at(i, i)) return false;
        return true;
    }

    bool is_transitive() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (!at(i, j)) continue;
                for (int k = 0; k < n_; ++k)
                    if (at(j, k) && !at(i, k)) return false;
            }
        return true;
    }

    // Returns a pair i != j with i <= j and j <= i, or {-1, -1} if none.
    std::pair<int, int> antisymmetry_violation() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (at(i, j) && at(j, i)) return {i, j};
        return {-1, -1};
    }

    bool is_antisymmetric() const { return antisymmetry_violation().first < 0; }

    void transitive_close() {
        for (int k = 0; k < n_; ++k)
            for (int i = 0; i < n_; ++i) {
                if (!at(i, k)) continue;
                for (int j = 0; j < n_; ++j)
                    if (at(k, j)) set(i, j);
            }
    }

    int count() const {
        int c = 0;
        for (char b : bits_) c += b != 0;
        return c;
    }

    bool operator==(const Relation&) const = default;

private:
    int n_;
    std::vector<char> bits_;
};

// Finite partially ordered set. Elements are the indices 0..n-1; the order
// is stored as the full reflexive-transitive closure so queries are O(1).
// Immutable after construction.
class Poset {
public:
    // Builds the reflexive-transitive closure of the given cover pairs and
    // validates antisymmetry. Throws CycleError (with a witness cycle) if the
    // covers relate two distinct elements both ways or loop an element onto
    // itself.
    static Poset from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                             std::vector<std::string> labels = {}) {
        if (n < 1) throw IndexError("poset needs at least one element");
        if (!labels.empty() && int(labels.size()) != n)
            throw IndexError("labels must be empty or one per element");
        for (const auto& [a, b] : covers) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw IndexError("cover pair (" + std::to_string(a) + "," + std::to_string(b) +
                                 ") out of range for n=" + std::to_string(n));
            if (a == b) throw CycleError({a, a}); // a self-cover is a one-step cycle
        }

        Relation r(n, /*reflexive=*/true);
        for (const auto& [a, b] : covers) r.set(a, b);
        r.transitive_close();

        auto [i, j] = r.antisymmetry_violation();
        if (i >= 0) throw CycleError(witness_cycle(n, covers, i, j));
        return Poset(std::move(r), std::move(labels));
    }

    static Poset chain(int n) {
        std::vector<std::pair<int, int>> covers;
        for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
        return from_covers(n, covers);
    }

    static Poset antichain(int n) { return from_covers(n, {}); }

    // Seeded random poset: every pair (i, j) with i < j is kept as an edge
    // with probability edge_density, then closed. Edges only go up in index
    // order, so antisymmetry holds by construction. Reproducible: the raw
    // mt19937_64 stream is compared against edge_density exactly, with no
    // platform-dependent float distribution in the loop.
    static Poset random(int n, const Rat& edge_density, std::uint64_t seed) {
        if (n < 1) throw IndexError("poset needs at least one element");
        if (edge_density < Rat(0) || edge_density > Rat(1))
            throw IndexError("edge density must be in [0, 1]");
        std::mt19937_64 rng(seed);
        std::vector<std::pair<int, int>> covers;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Rat u(long(rng() >> 11), long(1) << 53); // uniform in [0, 1)
                if (u < edge_density) covers.emplace_back(i, j);
            }
        return from_covers(n, covers);
    }

    int size() const { return leq_.size(); }

    bool leq(int a, int b) const {
        check_index(a);
        check_index(b);
        return leq_.at(a, b);
    }

    const Relation& relation() const { return leq_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::string label(int a) const {
        check_index(a);
        return labels_.empty() ? std::to_string(a) : labels_[a];
    }

    // All pairs (a, b) with a not<= b, in lexicographic order.
    std::vector<std::pair<int, int>> not_leq_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b)
                if (!leq_.at(a, b)) out.emplace_back(a, b);
        return out;
    }

    // { x : a <= x }, ascending.
    std::vector<int> upset(int a) const {
        check_index(a);
        std::vector<int> out;
        for (int x = 0; x < size(); ++x)
            if (leq_.at(a, x)) out.push_back(x);
        return out;
    }

    // Hasse covers (the transitive reduction, unique for a finite poset);
    // this is what gets serialized.
    std::vector<std::pair<int, int>> cover_pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b) {
                if (a == b || !leq_.at(a, b)) continue;
                bool direct = true;
                for (int c = 0; c < size() && direct; ++c)
                    if (c != a && c != b && leq_.at(a, c) && leq_.at(c, b)) direct = false;
                if (direct) out.emplace_back(a, b);
            }
        return out;
    }

    bool operator==(const Poset&) const = default;

private:
    Poset(Relation leq, std::vector<std::string> labels)
        : leq_(std::move(leq)), labels_(std::move(labels)) {}

    void check_index(int a) const {
        if (a < 0 || a >= size())
            throw IndexError("element " + std::to_string(a) + " out of range for n=" +
                             std::to_string(size()));
    }

    // Shortest closed walk through i and j in the cover digraph.
    static std::vector<int> witness_cycle(int n, const std::vector<std::pair<int, int>>& covers,
                                          int i, int j) {
        auto path = [&](int from, int to) {
            std::vector<int> parent(n, -1);
            std::deque<int> queue{from};
            std::vector<char> seen(n, 0);
            seen[from] = 1;
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                if (u == to) break;
                for (const auto& [a, b] : covers)
                    if (a == u && a != b && !seen[b]) {
                        seen[b] = 1;
                        parent[b] = u;
                        queue.push_back(b);
                    }
            }
            std::vector<int> p{to};
            for (int u = to; u != from; u = parent[u]) p.push_back(parent[u]);
            std::reverse(p.begin(), p.end());
            return p;
        };
        std::vector<int> cycle = path(i, j);
        std::vector<int> back = path(j, i);
        cycle.insert(cycle.end(), back.begin() + 1, back.end());
        return cycle;
    }

    Relation leq_;
    std::vector<std::string> labels_;
};

} // namespace isotone
