// Command-line front end: validate posets, derive upset generator
// families, build separation certificates and approximants, and run the
// randomized self-check suite. All arithmetic is exact; outputs are
// deterministic for identical inputs.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isotone/isotone.hpp"

namespace {

using namespace isotone;

Poset load_poset(const std::string& path) { return poset_from_json(load_json_file(path)); }

Family load_family(const std::string& path, const Poset& p) {
    return family_from_json(load_json_file(path), p);
}

GroundFunction load_function(const std::string& path, const Poset& p) {
    GroundFunction f = function_from_json(load_json_file(path));
    require_same_carrier(p, f);
    return f;
}

int relation_pairs(const Poset& p) {
    int count = 0;
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.leq(a, b)) ++count;
    return count;
}

void print_value_table(const Poset& p, const GroundFunction& v) {
    for (int m = 0; m < p.size(); ++m)
        std::cout << "  " << m << " (" << p.label(m) << "): " << v[m] << "\n";
}

int run_validate(const std::string& poset_path) {
    Poset p = load_poset(poset_path);
    std::cout << "poset ok: n=" << p.size() << ", relation pairs=" << relation_pairs(p)
              << ", covers=" << p.cover_pairs().size() << "\n";
    return 0;
}

int run_gen_upsets(const std::string& poset_path, const std::string& out_path) {
    Poset p = load_poset(poset_path);
    Family s = upset_generators(p);
    write_json_file(out_path, family_to_json(s, poset_path));
    std::cout << "wrote " << s.size() << " upset generators to " << out_path << "\n";
    return 0;
}

int run_check_generates(const std::string& poset_path, const std::string& family_path) {
    Poset p = load_poset(poset_path);
    Family s = load_family(family_path, p);
    GeneratesResult g = generates(p, s);
    if (g) {
        std::cout << "generates: true\n";
        return 0;
    }
    std::cout << "generates: false\n";
    std::cout << "witness: a=" << g.a << " (" << p.label(g.a) << "), b=" << g.b << " ("
              << p.label(g.b) << "); " << g.reason << "\n";
    return 1;
}

int run_separate(const std::string& poset_path, const std::string& family_path,
                 const std::vector<int>& zero_set, const std::vector<int>& one_set,
                 const std::string& provider_name, const std::string& out_path) {
    Poset p = load_poset(poset_path);
    Family s = load_family(family_path, p);
    RampProvider provider = provider_from_string(provider_name);
    SetSeparation sep = separate_sets_traced(p, s, zero_set, one_set, provider);
    write_json_file(out_path, expr_to_json(sep.expr));
    std::cout << "certificate nodes: " << node_count(sep.expr) << "\n";
    std::cout << "values:\n";
    print_value_table(p, sep.values);
    std::cout << "wrote certificate to " << out_path << "\n";
    return 0;
}

int run_approximate(const std::string& poset_path, const std::string& family_path,
                    const std::string& target_path, const std::string& eps_str, int n,
                    const std::string& provider_name, const std::string& out_path) {
    Poset p = load_poset(poset_path);
    Family s = load_family(family_path, p);
    GroundFunction f = load_function(target_path, p);
    RampProvider provider = provider_from_string(provider_name);

    ApproxReport rep = eps_str.empty() ? approximate_normalized(p, s, f, n, provider)
                                       : approximate(p, s, f, Rat::parse(eps_str), provider);

    std::cout << "n: " << rep.n << "\n";
    std::cout << "bound: " << rep.bound << "\n";
    std::cout << "error: " << rep.error << "\n";
    std::cout << "certificate nodes: " << node_count(rep.expr) << "\n";
    std::cout << "values:\n";
    print_value_table(p, rep.values);
    if (!out_path.empty()) {
        write_json_file(out_path, report_to_json(rep));
        std::cout << "wrote report to " << out_path << "\n";
    }
    return 0;
}

int run_verify(std::uint64_t seed, int trials, int max_size, const std::vector<int>& n_list,
               const std::string& provider_name, const std::string& out_path) {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.max_poset_size = max_size;
    if (!n_list.empty()) cfg.n_values = n_list;
    cfg.provider = provider_from_string(provider_name);
    SuiteOutcome out = run_suite(cfg);
    json j = outcome_to_json(cfg, out);
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_json_file(out_path, j);
    return out.failures.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified approximation of isotone functions on finite posets"};
    app.require_subcommand(1);

    std::string poset_path, family_path, target_path, out_path, eps_str;
    std::string provider_name = "pl";
    std::vector<int> zero_set, one_set, n_list;
    int n = 0;
    int trials = 200, max_size = 30;
    std::uint64_t seed = 42;

    CLI::App* validate = app.add_subcommand("validate", "Parse and validate a poset file");
    validate->add_option("poset", poset_path, "poset JSON file")->required();

    CLI::App* gen_upsets =
        app.add_subcommand("gen-upsets", "Write the family of upset indicator functions");
    gen_upsets->add_option("poset", poset_path, "poset JSON file")->required();
    gen_upsets->add_option("-o,--output", out_path, "output family JSON file")->required();

    CLI::App* check = app.add_subcommand(
        "check-generates", "Check whether a family generates the order (exit 1 with a witness "
                           "pair when it does not)");
    check->add_option("poset", poset_path, "poset JSON file")->required();
    check->add_option("family", family_path, "family JSON file")->required();

    CLI::App* separate = app.add_subcommand(
        "separate", "Build a certificate evaluating to 0 on one set and 1 on another");
    separate->add_option("poset", poset_path, "poset JSON file")->required();
    separate->add_option("family", family_path, "family JSON file")->required();
    separate->add_option("--zero-on", zero_set, "elements forced to 0 (comma separated)")
        ->delimiter(',');
    separate->add_option("--one-on", one_set, "elements forced to 1 (comma separated)")
        ->delimiter(',');
    separate->add_option("--provider", provider_name, "ramp provider: pl or smoothstep")
        ->default_val("pl");
    separate->add_option("-o,--output", out_path, "output certificate JSON file")->required();

    CLI::App* approx =
        app.add_subcommand("approximate", "Approximate an isotone target by a certified "
                                          "expression over the family");
    approx->add_option("poset", poset_path, "poset JSON file")->required();
    approx->add_option("family", family_path, "family JSON file")->required();
    approx->add_option("target", target_path, "target function JSON file")->required();
    CLI::Option* eps_opt =
        approx->add_option("--eps", eps_str, "error tolerance (positive rational)");
    CLI::Option* n_opt =
        approx->add_option("--n", n, "level count for a normalized target (positive integer)");
    eps_opt->excludes(n_opt);
    approx->add_option("--provider", provider_name, "ramp provider: pl or smoothstep")
        ->default_val("pl");
    approx->add_option("-o,--output", out_path, "output report JSON file");

    CLI::App* verify = app.add_subcommand(
        "verify", "Run the randomized self-check suite and print the outcome as JSON");
    verify->add_option("--seed", seed, "suite seed")->default_val(42);
    verify->add_option("--trials", trials, "number of trials")->default_val(200);
    verify->add_option("--max-size", max_size, "maximum poset size")->default_val(30);
    verify->add_option("--n-list", n_list, "level counts to test (comma separated)")
        ->delimiter(',');
    verify->add_option("--provider", provider_name, "ramp provider: pl or smoothstep")
        ->default_val("pl");
    verify->add_option("-o,--output", out_path, "also write the outcome JSON to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return run_validate(poset_path);
        if (*gen_upsets) return run_gen_upsets(poset_path, out_path);
        if (*check) return run_check_generates(poset_path, family_path);
        if (*separate)
            return run_separate(poset_path, family_path, zero_set, one_set, provider_name,
                                out_path);
        if (*approx) {
            if (eps_str.empty() && n_opt->count() == 0) {
                std::cerr << "approximate: exactly one of --eps or --n is required\n";
                return 2;
            }
            return run_approximate(poset_path, family_path, target_path, eps_str, n,
                                   provider_name, out_path);
        }
        if (*verify) return run_verify(seed, trials, max_size, n_list, provider_name, out_path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
