// calab: command-line front end for the Birkhoff interpolation and
// Casas-Alvero analysis library.
//
// Exit codes: 0 success (and verdict true / consistent where applicable),
// 1 verdict false or inconsistent, 2 input error, 3 numerical failure.

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "calab/calab.hpp"
#include "svg_writer.hpp"

using json = nlohmann::ordered_json;
using namespace calab;

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_complex(const Complex& c) {
    return fmt6(c.real()) + (c.imag() < 0 ? " - " : " + ") + fmt6(std::abs(c.imag())) + "i";
}

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

json complex_list_to_json(const std::vector<Complex>& v) {
    json out = json::array();
    for (const Complex& c : v) out.push_back(complex_to_json(c));
    return out;
}

json rootset_to_json(const RootSet& rs) {
    json out = json::array();
    for (const RootCluster& c : rs.clusters) {
        out.push_back(json{{"value", complex_to_json(c.representative)},
                           {"multiplicity", c.multiplicity}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Input handling

struct ParsedInput {
    std::optional<std::vector<Complex>> roots;
    std::optional<std::vector<Complex>> coeffs;
    std::optional<std::vector<Complex>> nodes;
    std::optional<std::vector<Complex>> values;
};

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& key) {
    if (!j.is_array()) throw InputError("\"" + key + "\" must be an array of [re, im] pairs");
    std::vector<Complex> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw InputError("\"" + key + "\" entries must be [re, im] number pairs");
        }
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (out.empty()) throw InputError("\"" + key + "\" must be nonempty");
    return out;
}

std::string read_input_text(const std::string& path) {
    if (!path.empty()) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot open input file: " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
    if (isatty(fileno(stdin))) {
        throw InputError("no --input file and standard input is a terminal");
    }
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

// Parses the input object and checks the key set: exactly one of
// roots/coeffs/nodes, restricted to `allowed`, plus "values" when requested.
ParsedInput parse_input(const std::string& text, const std::vector<std::string>& allowed,
                        bool needs_values) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw InputError("JSON parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(col));
    }
    if (!j.is_object()) throw InputError("input must be a JSON object");

    auto allowed_keys = [&] {
        std::string s;
        for (const auto& a : allowed) s += (s.empty() ? "" : ", ") + a;
        if (needs_values) s += ", values";
        return s;
    };

    ParsedInput in;
    int primary_keys = 0;
    for (const auto& [key, value] : j.items()) {
        const bool key_allowed = std::find(allowed.begin(), allowed.end(), key) != allowed.end();
        if (key == "values" && needs_values) {
            in.values = parse_complex_list(value, key);
        } else if (key_allowed && key == "roots") {
            in.roots = parse_complex_list(value, key);
            ++primary_keys;
        } else if (key_allowed && key == "coeffs") {
            in.coeffs = parse_complex_list(value, key);
            ++primary_keys;
        } else if (key_allowed && key == "nodes") {
            in.nodes = parse_complex_list(value, key);
            ++primary_keys;
        } else {
            throw InputError("unexpected key \"" + key + "\" (expected: " + allowed_keys() + ")");
        }
    }
    if (primary_keys != 1) {
        std::string s;
        for (const auto& a : allowed) s += (s.empty() ? "" : ", ") + a;
        throw InputError("exactly one of {" + s + "} is required");
    }
    if (needs_values && !in.values) throw InputError("\"values\" is required for this command");
    return in;
}

// ---------------------------------------------------------------------------
// Shared options

struct Options {
    std::string input_path;
    std::string format = "json";
    std::string plot_path;
    double tol_abs = 1e-10;
    double tol_rel = 1e-10;
    double cluster_radius = 0.0;
    int max_iter = 500;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::uint64_t seed = 0;
    int max_list = 1000;

    ToleranceProfile tolerance() const {
        ToleranceProfile t;
        t.abs_tol = tol_abs;
        t.rel_tol = tol_rel;
        t.cluster_radius = cluster_radius;
        t.root_iteration_cap = max_iter;
        t.validate();
        return t;
    }
};

void add_common_flags(CLI::App* cmd, Options& opt, bool with_input) {
    if (with_input) {
        cmd->add_option("--input", opt.input_path, "Input JSON file (default: stdin)");
    }
    cmd->add_option("--format", opt.format, "Output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--plot", opt.plot_path, "Write a complex-plane SVG plot to this path");
    cmd->add_option("--tol-abs", opt.tol_abs, "Absolute residual tolerance");
    cmd->add_option("--tol-rel", opt.tol_rel, "Relative (magnitude-bound-scaled) tolerance");
    cmd->add_option("--cluster-radius", opt.cluster_radius,
                    "Root clustering radius (0 = automatic)");
    cmd->add_option("--max-iter", opt.max_iter, "Root finder iteration cap");
}

bool use_color() {
    return isatty(fileno(stdout)) != 0 && std::getenv("NO_COLOR") == nullptr;
}

std::string colored(const std::string& s, bool good) {
    if (!use_color()) return s;
    return (good ? "\033[32m" : "\033[31m") + s + "\033[0m";
}

void write_plot(const Options& opt, const std::vector<cli::PointGroup>& groups) {
    if (opt.plot_path.empty()) return;
    std::ofstream f(opt.plot_path, std::ios::binary);
    if (!f) throw InputError("cannot open plot file: " + opt.plot_path);
    cli::write_complex_plane_svg(f, groups);
}

Polynomial polynomial_from_input(const ParsedInput& in, bool require_monic, bool& normalized) {
    normalized = false;
    if (in.roots) return from_roots(*in.roots);
    Polynomial p{*in.coeffs};
    if (require_monic && !p.is_monic()) {
        normalized = true;
        return monicized(p);
    }
    return p;
}

// ---------------------------------------------------------------------------
// forward / integral

int run_forward(const Options& opt, bool integral_route) {
    const ParsedInput in = parse_input(read_input_text(opt.input_path), {"nodes"}, false);
    const NodeVector& alpha = *in.nodes;
    const Polynomial p = integral_route ? iterated_integral(alpha) : solve_forward(alpha);
    const ToleranceProfile tol = opt.tolerance();

    json residuals = json::array();
    double max_resid = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        const Polynomial dk = derivative(p, static_cast<int>(k));
        const double r = std::abs(evaluate(dk, alpha[k]));
        residuals.push_back(r);
        max_resid = std::max(max_resid, r);
    }

    json rep{{"command", integral_route ? "integral" : "forward"},
             {"degree", p.degree()},
             {"nodes", complex_list_to_json(alpha)},
             {"coefficients", complex_list_to_json(p.coefficients())},
             {"condition_residuals", residuals},
             {"max_residual", max_resid}};

    if (opt.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << "coefficient_index,re,im\n";
        for (int j = 0; j <= p.degree(); ++j) {
            std::cout << j << "," << fmt17(p.coefficient(j).real()) << ","
                      << fmt17(p.coefficient(j).imag()) << "\n";
        }
    } else {
        std::cout << "monic solution of degree " << p.degree() << "\n";
        for (int j = p.degree(); j >= 0; --j) {
            std::cout << "  a_" << j << " = " << fmt_complex(p.coefficient(j)) << "\n";
        }
        std::cout << "max condition residual: " << fmt6(max_resid) << "\n";
    }

    if (!opt.plot_path.empty()) {
        const RootSet rs = roots_of(p, tol);
        std::vector<Complex> reps;
        for (const auto& c : rs.clusters) reps.push_back(c.representative);
        write_plot(opt, {{"solution roots", "#1f77b4", true, reps},
                         {"nodes", "#7f7f7f", false, alpha}});
    }
    return 0;
}

// ---------------------------------------------------------------------------
// inverse

int run_inverse(const Options& opt) {
    const ParsedInput in = parse_input(read_input_text(opt.input_path), {"roots", "coeffs"}, false);
    bool normalized = false;
    const Polynomial p = polynomial_from_input(in, true, normalized);
    const ToleranceProfile tol = opt.tolerance();

    const NodeLevels nl = node_levels(p, tol);
    AssignmentEnumerator en(nl, opt.cap);

    json levels = json::array();
    for (int k = 0; k < nl.degree(); ++k) {
        levels.push_back(json{{"order", k},
                              {"roots", rootset_to_json(nl.levels[static_cast<std::size_t>(k)])}});
    }

    json assignments = json::array();
    unsigned long long matching = 0;
    unsigned long long listed = 0;
    while (auto a = en.next()) {
        const bool matches = assignment_matches_roots(p, *a, tol);
        if (matches) ++matching;
        if (listed < static_cast<unsigned long long>(opt.max_list)) {
            assignments.push_back(json{{"alpha", complex_list_to_json(a->alpha)},
                                       {"residuals", a->residuals},
                                       {"matches_roots", matches}});
            ++listed;
        }
    }

    json rep{{"command", "inverse"},
             {"degree", p.degree()},
             {"coefficients", complex_list_to_json(p.coefficients())},
             {"input_normalized", normalized},
             {"levels", levels},
             {"raw_assignment_count", en.raw_total()},
             {"distinct_assignment_count", en.distinct_total()},
             {"node_matching_assignment_count", matching},
             {"assignments_listed", listed},
             {"assignments", assignments}};

    if (opt.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << "level,root_re,root_im,multiplicity\n";
        for (int k = 0; k < nl.degree(); ++k) {
            for (const RootCluster& c : nl.levels[static_cast<std::size_t>(k)].clusters) {
                std::cout << k << "," << fmt17(c.representative.real()) << ","
                          << fmt17(c.representative.imag()) << "," << c.multiplicity << "\n";
            }
        }
    } else {
        std::cout << "degree " << p.degree() << ": " << en.raw_total()
                  << " assignments (distinct: " << en.distinct_total() << ")\n";
        for (int k = 0; k < nl.degree(); ++k) {
            std::cout << "  level " << k << ":";
            for (const RootCluster& c : nl.levels[static_cast<std::size_t>(k)].clusters) {
                std::cout << " " << fmt_complex(c.representative) << " x" << c.multiplicity;
            }
            std::cout << "\n";
        }
        std::cout << "assignments matching the root multiset: " << matching << "\n";
    }

    if (!opt.plot_path.empty()) {
        std::vector<cli::PointGroup> groups;
        std::vector<Complex> reps;
        for (const auto& c : nl.levels[0].clusters) reps.push_back(c.representative);
        groups.push_back({"roots", "#1f77b4", true, reps});
        for (int k = 1; k < nl.degree(); ++k) {
            std::vector<Complex> pts;
            for (const auto& c : nl.levels[static_cast<std::size_t>(k)].clusters) {
                pts.push_back(c.representative);
            }
            groups.push_back(
                {"level " + std::to_string(k), cli::level_hue(k, nl.degree()), false, pts});
        }
        write_plot(opt, groups);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// check

int run_check(const Options& opt) {
    const ParsedInput in = parse_input(read_input_text(opt.input_path), {"roots", "coeffs"}, false);
    bool normalized = false;
    const Polynomial p = polynomial_from_input(in, true, normalized);
    const ToleranceProfile tol = opt.tolerance();
    const CAReport ca = ca_check(p, tol);

    json orders = json::array();
    for (const CAOrderRecord& r : ca.per_order) {
        orders.push_back(json{{"order", r.order},
                              {"best_root", complex_to_json(r.best_root)},
                              {"residual", r.residual},
                              {"scaled_residual", r.scaled_residual},
                              {"passes", r.passes}});
    }
    json rep{{"command", "check"},
             {"degree", ca.degree},
             {"input_normalized", normalized},
             {"verdict", ca.verdict},
             {"roots", rootset_to_json(ca.roots)},
             {"orders", orders},
             {"witness", ca.witness ? complex_list_to_json(*ca.witness) : json(nullptr)}};

    if (opt.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << "order,best_root_re,best_root_im,residual,scaled_residual,passes\n";
        for (const CAOrderRecord& r : ca.per_order) {
            std::cout << r.order << "," << fmt17(r.best_root.real()) << ","
                      << fmt17(r.best_root.imag()) << "," << fmt17(r.residual) << ","
                      << fmt17(r.scaled_residual) << "," << (r.passes ? "true" : "false") << "\n";
        }
    } else {
        std::cout << "degree " << ca.degree << " polynomial: "
                  << colored(ca.verdict ? "shares a root with every derivative"
                                        : "fails the common-root condition",
                             ca.verdict)
                  << "\n";
        for (const CAOrderRecord& r : ca.per_order) {
            std::cout << "  order " << r.order << ": " << (r.passes ? "pass" : "FAIL")
                      << "  best root " << fmt_complex(r.best_root) << "  residual "
                      << fmt6(r.residual) << "\n";
        }
    }

    if (!opt.plot_path.empty()) {
        std::vector<Complex> reps;
        for (const auto& c : ca.roots.clusters) reps.push_back(c.representative);
        std::vector<cli::PointGroup> groups{{"roots", "#1f77b4", true, reps}};
        if (ca.witness) groups.push_back({"witness", "#d62728", false, *ca.witness});
        write_plot(opt, groups);
    }
    return ca.verdict ? 0 : 1;
}

// ---------------------------------------------------------------------------
// search

int run_search(const Options& opt, const SearchConfig& cfg) {
    cfg.validate();
    const SearchResult res = ca_search(cfg);

    json rep{{"command", "search"},
             {"degree", cfg.degree},
             {"multistarts", cfg.multistarts},
             {"seed", cfg.seed},
             {"config",
              json{{"step_init", cfg.step_init},
                   {"step_min", cfg.step_min},
                   {"max_iters", cfg.max_iters},
                   {"box_radius", cfg.box_radius}}},
             {"best_defect", res.best_defect},
             {"best_roots", complex_list_to_json(res.best_roots)},
             {"starts_run", res.starts_run},
             {"per_start_defects", res.per_start_defects}};

    if (opt.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << "start,defect\n";
        for (std::size_t i = 0; i < res.per_start_defects.size(); ++i) {
            std::cout << i << "," << fmt17(res.per_start_defects[i]) << "\n";
        }
    } else {
        std::cout << "degree " << cfg.degree << ", " << res.starts_run << " starts, seed "
                  << cfg.seed << "\n";
        std::cout << "best defect: " << fmt6(res.best_defect) << "\n";
        std::cout << "best configuration:";
        for (const Complex& r : res.best_roots) std::cout << " " << fmt_complex(r);
        std::cout << "\n";
    }

    if (!opt.plot_path.empty()) {
        write_plot(opt, {{"best configuration", "#1f77b4", true, res.best_roots}});
    }
    return 0;
}

// ---------------------------------------------------------------------------
// problem3

int run_problem3(const Options& opt) {
    const ParsedInput in = parse_input(read_input_text(opt.input_path), {"nodes"}, true);
    if (in.values->size() != in.nodes->size()) {
        throw InputError("\"values\" must have the same length as \"nodes\"");
    }
    const OverdeterminedReport od = analyze_overdetermined(*in.nodes, *in.values, opt.tolerance());

    json rep{{"command", "problem3"},
             {"degree", od.degree},
             {"nodes", complex_list_to_json(*in.nodes)},
             {"values", complex_list_to_json(*in.values)},
             {"distinct_equation_count", od.distinct_equation_count},
             {"rank", od.rank},
             {"family_dimension", od.family_dimension},
             {"residual_norm", od.residual_norm},
             {"tolerance", od.tolerance},
             {"consistent", od.consistent},
             {"degenerate_degree", od.degenerate_degree},
             {"solution", od.solution_coefficients
                              ? complex_list_to_json(*od.solution_coefficients)
                              : json(nullptr)}};

    if (opt.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << "field,value\n";
        std::cout << "degree," << od.degree << "\n";
        std::cout << "distinct_equation_count," << od.distinct_equation_count << "\n";
        std::cout << "rank," << od.rank << "\n";
        std::cout << "family_dimension," << od.family_dimension << "\n";
        std::cout << "residual_norm," << fmt17(od.residual_norm) << "\n";
        std::cout << "tolerance," << fmt17(od.tolerance) << "\n";
        std::cout << "consistent," << (od.consistent ? "true" : "false") << "\n";
        std::cout << "degenerate_degree," << (od.degenerate_degree ? "true" : "false") << "\n";
    } else {
        std::cout << od.distinct_equation_count << " distinct equations on " << od.degree + 1
                  << " coefficients, rank " << od.rank << "\n";
        std::cout << "least-deviation residual: " << fmt6(od.residual_norm) << " (tolerance "
                  << fmt6(od.tolerance) << ")\n";
        std::cout << "verdict: "
                  << colored(od.consistent ? "consistent" : "inconsistent", od.consistent) << "\n";
        if (od.solution_coefficients) {
            std::cout << "a representative solution:\n";
            for (int j = od.degree; j >= 0; --j) {
                std::cout << "  a_" << j << " = "
                          << fmt_complex((*od.solution_coefficients)[static_cast<std::size_t>(j)])
                          << "\n";
            }
        }
    }

    if (!opt.plot_path.empty()) {
        std::vector<cli::PointGroup> groups{{"nodes", "#7f7f7f", false, *in.nodes}};
        if (od.solution && od.solution->degree() >= 1) {
            const RootSet rs = roots_of(*od.solution, opt.tolerance());
            std::vector<Complex> reps;
            for (const auto& c : rs.clusters) reps.push_back(c.representative);
            groups.insert(groups.begin(), {"solution roots", "#1f77b4", true, reps});
        }
        write_plot(opt, groups);
    }
    return od.consistent ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify-identities

struct IdentityResult {
    std::string name;
    int cases = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

IdentityResult verify_p2_closed_form(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x70320001ULL);
    IdentityResult res{"p2-closed-form", 1000, 0.0, 1e-12, false};
    for (int t = 0; t < res.cases; ++t) {
        const Complex a1 = rng.next_in_box(5.0), a2 = rng.next_in_box(5.0);
        const Polynomial p = solve_forward(NodeVector{a1, a2});
        const Complex shift = a1 - a2;
        const Polynomial expect(
            std::vector<Complex>{a2 * a2 - shift * shift, -2.0 * a2, Complex(1.0)});
        const double err = max_coefficient_difference(p, expect) / (1.0 + inf_norm(expect));
        res.max_error = std::max(res.max_error, err);
    }
    res.pass = res.max_error <= res.tolerance;
    return res;
}

IdentityResult verify_second_proof_identity(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x70320002ULL);
    IdentityResult res{"second-proof-identity", 0, 0.0, 1e-10, false};
    for (int n = 2; n <= 10; ++n) {
        for (int t = 0; t < 100; ++t) {
            const Complex a = rng.next_in_box(2.0);
            const Complex b = rng.next_in_box(2.0);
            NodeVector alpha(static_cast<std::size_t>(n), a);
            alpha.back() = b;
            const Polynomial p = solve_forward(alpha);
            std::vector<Complex> c =
                from_roots(std::vector<Complex>(static_cast<std::size_t>(n), a)).coefficients();
            const Polynomial lower =
                from_roots(std::vector<Complex>(static_cast<std::size_t>(n - 1), a));
            for (int j = 0; j <= n - 1; ++j) {
                c[static_cast<std::size_t>(j)] +=
                    static_cast<double>(n) * (a - b) * lower.coefficient(j);
            }
            const Polynomial expect(std::move(c));
            const double err = max_coefficient_difference(p, expect) / inf_norm(expect);
            res.max_error = std::max(res.max_error, err);
            ++res.cases;
        }
    }
    res.pass = res.max_error <= res.tolerance;
    return res;
}

IdentityResult verify_second_proof_root_value(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x70320003ULL);
    IdentityResult res{"second-proof-root-value", 0, 0.0, 1e-9, false};
    for (int n = 2; n <= 10; ++n) {
        for (int t = 0; t < 100; ++t) {
            // Keep |b - a| of order one: the value -(n-1)(b-a)^n is
            // exponentially ill-conditioned when the nodes nearly coincide.
            const Complex a = rng.next_in_box(0.5);
            const Complex b =
                a + std::polar(rng.next_in(1.0, 2.0), rng.next_in(0.0, 6.283185307179586));
            NodeVector alpha(static_cast<std::size_t>(n), a);
            alpha.back() = b;
            const Polynomial p = solve_forward(alpha);
            Complex pw(1.0);
            for (int i = 0; i < n; ++i) pw *= (b - a);
            const Complex expect = -static_cast<double>(n - 1) * pw;
            const double err = std::abs(evaluate(p, b) - expect) / std::abs(expect);
            res.max_error = std::max(res.max_error, err);
            ++res.cases;
        }
    }
    res.pass = res.max_error <= res.tolerance;
    return res;
}

IdentityResult verify_centroid_lemma(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x70320004ULL);
    IdentityResult res{"centroid-lemma", 500, 0.0, 1e-9, false};
    for (int t = 0; t < res.cases; ++t) {
        const int n = 1 + t % 10;
        std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = rng.next_in_box(1.0);
        c.back() = Complex(1.0);
        const Polynomial p(std::move(c));
        const Complex expected = centroid(p);

        const Polynomial last = derivative(p, n - 1);
        const Complex root = -last.coefficient(0) / last.coefficient(1);
        res.max_error = std::max(res.max_error, std::abs(root - expected));

        const RootSet rs = roots_of(p);
        Complex mean(0.0);
        for (const RootCluster& cl : rs.clusters) {
            mean += cl.representative * static_cast<double>(cl.multiplicity);
        }
        mean /= static_cast<double>(n);
        res.max_error = std::max(res.max_error, std::abs(mean - expected));
    }
    res.pass = res.max_error <= res.tolerance;
    return res;
}

IdentityResult verify_ck_invariance(std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x70320005ULL);
    IdentityResult res{"ck-invariance", 500, 0.0, 1e-12, false};
    for (int t = 0; t < res.cases; ++t) {
        const int n = 2 + t % 9;
        std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = rng.next_in_box(2.0);
        c.back() = Complex(1.0);
        const Polynomial p(std::move(c));
        const SymmetricMeans cp = symmetric_means(p);
        const SymmetricMeans cq = symmetric_means(monicized(derivative(p)));
        for (int k = 0; k <= n - 1; ++k) {
            const double scale = std::max(std::abs(cp.c[static_cast<std::size_t>(k)]), 1e-30);
            res.max_error =
                std::max(res.max_error, std::abs(cq.c[static_cast<std::size_t>(k)] -
                                                 cp.c[static_cast<std::size_t>(k)]) /
                                            scale);
        }
    }
    res.pass = res.max_error <= res.tolerance;
    return res;
}

int run_verify_identities(const Options& opt) {
    const std::vector<IdentityResult> results = {
        verify_p2_closed_form(opt.seed), verify_second_proof_identity(opt.seed),
        verify_second_proof_root_value(opt.seed), verify_centroid_lemma(opt.seed),
        verify_ck_invariance(opt.seed)};
    bool all = true;
    json arr = json::array();
    for (const IdentityResult& r : results) {
        all = all && r.pass;
        arr.push_back(json{{"name", r.name},
                           {"cases", r.cases},
                           {"max_error", r.max_error},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
    }
    json rep{{"command", "verify-identities"},
             {"seed", opt.seed},
             {"identities", arr},
             {"all_pass", all}};

    if (opt.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else if (opt.format == "csv") {
        std::cout << "identity,cases,max_error,tolerance,pass\n";
        for (const IdentityResult& r : results) {
            std::cout << r.name << "," << r.cases << "," << fmt17(r.max_error) << ","
                      << fmt17(r.tolerance) << "," << (r.pass ? "true" : "false") << "\n";
        }
    } else {
        for (const IdentityResult& r : results) {
            std::cout << colored(r.pass ? "pass" : "FAIL", r.pass) << "  " << r.name << "  ("
                      << r.cases << " cases, max error " << fmt6(r.max_error) << ", tolerance "
                      << fmt6(r.tolerance) << ")\n";
        }
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff interpolation and Casas-Alvero condition laboratory"};
    app.require_subcommand(1);

    Options opt;
    SearchConfig scfg;

    CLI::App* forward = app.add_subcommand("forward", "Solve the lacunary interpolation problem");
    add_common_flags(forward, opt, true);

    CLI::App* integral = app.add_subcommand(
        "integral", "Solve the same problem via the iterated-integral construction");
    add_common_flags(integral, opt, true);

    CLI::App* inverse =
        app.add_subcommand("inverse", "Enumerate node vectors admissible for a given polynomial");
    add_common_flags(inverse, opt, true);
    inverse->add_option("--cap", opt.cap, "Assignment enumeration cap (error when exceeded)");
    inverse->add_option("--max-list", opt.max_list, "Assignments listed in the report");

    CLI::App* check = app.add_subcommand(
        "check", "Decide whether the polynomial shares a root with each derivative");
    add_common_flags(check, opt, true);

    CLI::App* search =
        app.add_subcommand("search", "Multistart defect minimization over root configurations");
    add_common_flags(search, opt, false);
    search->add_option("--degree", scfg.degree, "Configuration degree (>= 3)")->required();
    search->add_option("--multistarts", scfg.multistarts, "Number of descent starts")->required();
    search->add_option("--seed", opt.seed, "Random seed");
    search->add_option("--step-init", scfg.step_init, "Initial pattern-search step");
    search->add_option("--step-min", scfg.step_min, "Stopping step size");
    search->add_option("--search-iters", scfg.max_iters, "Sweep cap per start");
    search->add_option("--box-radius", scfg.box_radius, "Start sampling box radius");

    CLI::App* problem3 =
        app.add_subcommand("problem3", "Analyze the overdetermined interpolation problem");
    add_common_flags(problem3, opt, true);

    CLI::App* verify = app.add_subcommand(
        "verify-identities", "Run the built-in identity suite on seeded random inputs");
    add_common_flags(verify, opt, false);
    verify->add_option("--seed", opt.seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (forward->parsed()) return run_forward(opt, false);
        if (integral->parsed()) return run_forward(opt, true);
        if (inverse->parsed()) return run_inverse(opt);
        if (check->parsed()) return run_check(opt);
        if (search->parsed()) {
            scfg.seed = opt.seed;
            return run_search(opt, scfg);
        }
        if (problem3->parsed()) return run_problem3(opt);
        if (verify->parsed()) return run_verify_identities(opt);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const EnumerationCapExceeded& e) {
        std::cerr << "input error: " << e.what() << " (raise --cap to proceed)\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const RootFindingError& e) {
        std::cerr << "numerical failure: " << e.what() << " (worst residual "
                  << fmt6(e.max_residual) << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
