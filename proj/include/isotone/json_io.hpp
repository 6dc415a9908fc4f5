#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isotone/cone.hpp"
#include "isotone/construct.hpp"
#include "isotone/errors.hpp"
#include "isotone/funcspace.hpp"
#include "isotone/pl.hpp"
#include "isotone/poset.hpp"
#include "isotone/rational.hpp"
#include "isotone/verify.hpp"

namespace isotone {

using json = nlohmann::json;

namespace detail {

inline json rat_to_json(const Rat& r) { return r.str(); }

inline Rat rat_from_json(const json& j, const std::string& what) {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(long(j.get<long long>()));
    throw ParseError(what + ": expected a rational string like \"3/4\"");
}

inline int int_from_json(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ParseError(what + ": expected an integer");
    return int(j.get<long long>());
}

inline const json& require_key(const json& j, const std::string& key, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(what + ": missing key \"" + key + "\"");
    return *it;
}

inline std::vector<int> int_list_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(int_from_json(e, what));
    return out;
}

inline std::vector<Rat> rat_list_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected an array of rationals");
    std::vector<Rat> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(rat_from_json(e, what));
    return out;
}

} // namespace detail

// ---- Poset: {"n": int, "covers": [[a, b], ...], "labels": [...]?} ----

inline json poset_to_json(const Poset& p) {
    json j;
    j["n"] = p.size();
    json covers = json::array();
    for (auto [a, b] : p.cover_pairs()) covers.push_back(json::array({a, b}));
    j["covers"] = std::move(covers);
    if (!p.labels().empty()) j["labels"] = p.labels();
    return j;
}

inline Poset poset_from_json(const json& j) {
    int n = detail::int_from_json(detail::require_key(j, "n", "poset"), "poset n");
    const json& jc = detail::require_key(j, "covers", "poset");
    if (!jc.is_array()) throw ParseError("poset covers: expected an array of pairs");
    std::vector<std::pair<int, int>> covers;
    covers.reserve(jc.size());
    for (const json& e : jc) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("poset covers: each entry must be a pair [a, b]");
        covers.emplace_back(detail::int_from_json(e[0], "poset cover"),
                            detail::int_from_json(e[1], "poset cover"));
    }
    std::vector<std::string> labels;
    if (j.is_object() && j.contains("labels")) {
        const json& jl = j["labels"];
        if (!jl.is_array()) throw ParseError("poset labels: expected an array of strings");
        for (const json& e : jl) {
            if (!e.is_string()) throw ParseError("poset labels: expected an array of strings");
            labels.push_back(e.get<std::string>());
        }
    }
    return Poset::from_covers(n, covers, labels);
}

// ---- Function: {"poset": "<ref>", "values": ["p/q", ...]} ----

inline json function_to_json(const GroundFunction& f, const std::string& poset_ref) {
    json j;
    j["poset"] = poset_ref;
    json values = json::array();
    for (int i = 0; i < f.size(); ++i) values.push_back(detail::rat_to_json(f[i]));
    j["values"] = std::move(values);
    return j;
}

inline GroundFunction function_from_json(const json& j, std::string* poset_ref = nullptr) {
    const json& jp = detail::require_key(j, "poset", "function");
    if (!jp.is_string()) throw ParseError("function poset: expected a string reference");
    if (poset_ref) *poset_ref = jp.get<std::string>();
    return GroundFunction(
        detail::rat_list_from_json(detail::require_key(j, "values", "function"), "function values"));
}

// ---- Family: {"poset": "<ref>", "members": [[...], ...], "names": [...]?} ----

inline json family_to_json(const Family& s, const std::string& poset_ref) {
    json j;
    j["poset"] = poset_ref;
    json members = json::array();
    for (const GroundFunction& f : s.members()) {
        json values = json::array();
        for (int i = 0; i < f.size(); ++i) values.push_back(detail::rat_to_json(f[i]));
        members.push_back(std::move(values));
    }
    j["members"] = std::move(members);
    if (!s.names().empty()) j["names"] = s.names();
    return j;
}

// Validates against the given poset: member sizes and isotonicity.
inline Family family_from_json(const json& j, const Poset& p, std::string* poset_ref = nullptr) {
    const json& jp = detail::require_key(j, "poset", "family");
    if (!jp.is_string()) throw ParseError("family poset: expected a string reference");
    if (poset_ref) *poset_ref = jp.get<std::string>();
    const json& jm = detail::require_key(j, "members", "family");
    if (!jm.is_array()) throw ParseError("family members: expected an array of value arrays");
    std::vector<GroundFunction> members;
    members.reserve(jm.size());
    for (const json& e : jm)
        members.emplace_back(detail::rat_list_from_json(e, "family member"));
    std::vector<std::string> names;
    if (j.contains("names")) {
        const json& jn = j["names"];
        if (!jn.is_array()) throw ParseError("family names: expected an array of strings");
        for (const json& e : jn) {
            if (!e.is_string()) throw ParseError("family names: expected an array of strings");
            names.push_back(e.get<std::string>());
        }
    }
    return Family(p, std::move(members), std::move(names));
}

// ---- Operating function ----
// {"kind": "pl", "breakpoints": [["x", "y"], ...], "left_slope": "p/q",
//  "right_slope": "p/q"}  |  {"kind": "smoothstep", "a": "p/q", "b": "p/q"}
// An affine function is encoded with a single anchor breakpoint at x=0 and
// both slopes equal; the loader canonicalizes it back.

inline json op_to_json(const OperatingFn& op) {
    json j;
    if (op.is_pl()) {
        const PLFunction& f = op.pl();
        j["kind"] = "pl";
        json bps = json::array();
        if (f.breakpoints().empty()) {
            // Affine: a single anchor breakpoint at x=0 with both slopes equal.
            bps.push_back(
                json::array({detail::rat_to_json(Rat(0)), detail::rat_to_json(f(Rat(0)))}));
        } else {
            for (const auto& bp : f.breakpoints())
                bps.push_back(json::array({detail::rat_to_json(bp.x), detail::rat_to_json(bp.y)}));
        }
        j["breakpoints"] = std::move(bps);
        j["left_slope"] = detail::rat_to_json(f.left_slope());
        j["right_slope"] = detail::rat_to_json(f.right_slope());
    } else {
        const Smoothstep& s = op.smoothstep();
        j["kind"] = "smoothstep";
        j["a"] = detail::rat_to_json(s.a());
        j["b"] = detail::rat_to_json(s.b());
    }
    return j;
}

inline OperatingFn op_from_json(const json& j) {
    const json& jk = detail::require_key(j, "kind", "operating function");
    if (!jk.is_string()) throw ParseError("operating function kind: expected a string");
    std::string kind = jk.get<std::string>();
    if (kind == "pl") {
        const json& jb = detail::require_key(j, "breakpoints", "operating function");
        if (!jb.is_array() || jb.empty())
            throw ParseError("operating function breakpoints: expected a non-empty array");
        std::vector<PLFunction::Breakpoint> bps;
        bps.reserve(jb.size());
        for (const json& e : jb) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("operating function breakpoints: each entry must be [x, y]");
            bps.push_back({detail::rat_from_json(e[0], "breakpoint x"),
                           detail::rat_from_json(e[1], "breakpoint y")});
        }
        Rat ls = detail::rat_from_json(detail::require_key(j, "left_slope", "operating function"),
                                       "left_slope");
        Rat rs = detail::rat_from_json(detail::require_key(j, "right_slope", "operating function"),
                                       "right_slope");
        return OperatingFn(PLFunction::from_breakpoints(std::move(bps), ls, rs));
    }
    if (kind == "smoothstep") {
        Rat a = detail::rat_from_json(detail::require_key(j, "a", "operating function"), "a");
        Rat b = detail::rat_from_json(detail::require_key(j, "b", "operating function"), "b");
        return OperatingFn(Smoothstep(a, b));
    }
    throw ParseError("operating function kind: expected \"pl\" or \"smoothstep\", got \"" + kind +
                     "\"");
}

// ---- Cone expression ----
// {"gen": i} | {"sum": [e1, e2]} | {"comp": {"op": <op>, "arg": <expr>}}

inline json expr_to_json(const ConeExprPtr& e) {
    if (!e) throw EmptyList();
    switch (e->kind()) {
    case ConeExpr::Kind::gen:
        return json{{"gen", e->gen_index()}};
    case ConeExpr::Kind::sum:
        return json{{"sum", json::array({expr_to_json(e->left()), expr_to_json(e->right())})}};
    case ConeExpr::Kind::comp:
    default:
        return json{{"comp", json{{"op", op_to_json(e->op())}, {"arg", expr_to_json(e->arg())}}}};
    }
}

inline ConeExprPtr expr_from_json(const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ParseError("expression: expected an object with exactly one of gen/sum/comp");
    if (j.contains("gen"))
        return ConeExpr::gen(detail::int_from_json(j["gen"], "expression gen"));
    if (j.contains("sum")) {
        const json& js = j["sum"];
        if (!js.is_array() || js.size() != 2)
            throw ParseError("expression sum: expected an array of two expressions");
        return ConeExpr::sum(expr_from_json(js[0]), expr_from_json(js[1]));
    }
    if (j.contains("comp")) {
        const json& jc = j["comp"];
        return ConeExpr::comp(op_from_json(detail::require_key(jc, "op", "expression comp")),
                              expr_from_json(detail::require_key(jc, "arg", "expression comp")));
    }
    throw ParseError("expression: expected an object with exactly one of gen/sum/comp");
}

// ---- Approximation report ----
// {"n": int, "bound": "p/q", "error": "p/q", "F": <expr>, "F_values": [...],
//  "levels": [{"i": int, "K": [...], "L": [...], "f_i": <expr>}, ...]}

inline json report_to_json(const ApproxReport& rep) {
    json j;
    j["n"] = rep.n;
    j["bound"] = detail::rat_to_json(rep.bound);
    j["error"] = detail::rat_to_json(rep.error);
    j["F"] = expr_to_json(rep.expr);
    json values = json::array();
    for (int i = 0; i < rep.values.size(); ++i)
        values.push_back(detail::rat_to_json(rep.values[i]));
    j["F_values"] = std::move(values);
    json levels = json::array();
    for (const LevelReport& level : rep.levels) {
        json jl;
        jl["i"] = level.index;
        jl["K"] = level.zero_set;
        jl["L"] = level.one_set;
        jl["f_i"] = expr_to_json(level.expr);
        levels.push_back(std::move(jl));
    }
    j["levels"] = std::move(levels);
    return j;
}

// Reconstructs everything the JSON carries; target and per-level values are
// not serialized, so they come back empty.
inline ApproxReport report_from_json(const json& j) {
    ApproxReport rep;
    rep.n = detail::int_from_json(detail::require_key(j, "n", "report"), "report n");
    rep.bound = detail::rat_from_json(detail::require_key(j, "bound", "report"), "report bound");
    rep.error = detail::rat_from_json(detail::require_key(j, "error", "report"), "report error");
    rep.expr = expr_from_json(detail::require_key(j, "F", "report"));
    rep.values = GroundFunction(detail::rat_list_from_json(
        detail::require_key(j, "F_values", "report"), "report F_values"));
    const json& jl = detail::require_key(j, "levels", "report");
    if (!jl.is_array()) throw ParseError("report levels: expected an array");
    for (const json& e : jl) {
        LevelReport level;
        level.index = detail::int_from_json(detail::require_key(e, "i", "report level"),
                                            "report level i");
        level.zero_set =
            detail::int_list_from_json(detail::require_key(e, "K", "report level"), "report K");
        level.one_set =
            detail::int_list_from_json(detail::require_key(e, "L", "report level"), "report L");
        level.expr = expr_from_json(detail::require_key(e, "f_i", "report level"));
        rep.levels.push_back(std::move(level));
    }
    return rep;
}

// ---- Suite outcome ----

inline std::string provider_to_string(RampProvider p) {
    return p == RampProvider::pl ? "pl" : "smoothstep";
}

inline RampProvider provider_from_string(const std::string& s) {
    if (s == "pl") return RampProvider::pl;
    if (s == "smoothstep") return RampProvider::smoothstep;
    throw ParseError("provider: expected \"pl\" or \"smoothstep\", got \"" + s + "\"");
}

inline json outcome_to_json(const SuiteConfig& cfg, const SuiteOutcome& out) {
    json j;
    json jc;
    jc["seed"] = cfg.seed;
    jc["trials"] = cfg.trials;
    jc["max_poset_size"] = cfg.max_poset_size;
    jc["n_values"] = cfg.n_values;
    jc["density_lo"] = detail::rat_to_json(cfg.density_lo);
    jc["density_hi"] = detail::rat_to_json(cfg.density_hi);
    jc["provider"] = provider_to_string(cfg.provider);
    j["config"] = std::move(jc);
    j["trials_run"] = out.trials_run;
    json failures = json::array();
    for (const Failure& f : out.failures) {
        json jf;
        jf["trial"] = f.trial;
        jf["property"] = f.property;
        jf["counterexample"] = f.counterexample;
        failures.push_back(std::move(jf));
    }
    j["failures"] = std::move(failures);
    j["max_observed_error_ratio"] = detail::rat_to_json(out.max_observed_error_ratio);
    return j;
}

// ---- Files ----

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path);
}

} // namespace isotone
