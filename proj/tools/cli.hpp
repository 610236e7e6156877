#pragma once

// navier4 command-line front end. Exit codes:
//   0 success, 2 invalid arguments, 3 non-convergence, 4 evaluation or parse error,
//   5 contraction hypothesis fails (certify), 1 I/O failure.

#include "navier4/json.hpp"
#include "navier4/navier4.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace navier4::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kInvalidArguments = 2,
    kNonConvergence = 3,
    kEvaluationError = 4,
    kNotContractive = 5,
};

struct CliConfig {
    // problem selector
    std::string example;
    std::string f_text;
    std::string kernel_text;
    std::string exact_text;
    // grid and stopping
    int n = 100;
    std::string criterion = "successive";
    double eps = 1e-10;
    int max_iter = 1000;
    std::string grids;
    // outputs
    std::string out_path;
    std::string plot_path;
    bool json = false;
    // certificate inputs
    std::optional<double> m;
    std::optional<double> l0, l1, l2, m2;
    bool estimate = false;
    bool positivity = false;
    int samples = kDefaultLipschitzSamples;
    int density = kDefaultDensity;
    unsigned long long seed = 20240601;
};

namespace detail {

inline Problem make_problem(const CliConfig& c) {
    const bool by_name = !c.example.empty();
    const bool by_expr = !c.f_text.empty() || !c.kernel_text.empty() || !c.exact_text.empty();
    if (by_name == by_expr) throw ArgumentError("give exactly one of --example NAME or --f EXPR --kernel EXPR");
    if (by_name) return lookup_example(c.example);
    if (c.f_text.empty() || c.kernel_text.empty()) throw ArgumentError("--f and --kernel must both be given");
    std::optional<std::string_view> exact;
    if (!c.exact_text.empty()) exact = c.exact_text;
    return from_expressions(c.f_text, c.kernel_text, exact);
}

inline StoppingRule make_rule(const CliConfig& c) {
    if (c.max_iter < 1) throw ArgumentError("--max-iter must be >= 1");
    if (c.criterion == "successive") return StoppingRule::successive(c.eps, c.max_iter);
    if (c.criterion == "exact") return StoppingRule::exact_error(c.max_iter);
    throw ArgumentError("--criterion must be 'successive' or 'exact'");
}

inline std::vector<int> parse_grids(const std::string& text) {
    std::vector<int> ns;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ArgumentError("--grids: '" + item + "' is not an integer");
        }
        if (used != item.size()) throw ArgumentError("--grids: '" + item + "' is not an integer");
        ns.push_back(value);
    }
    if (ns.empty()) throw ArgumentError("--grids needs a comma-separated list of grid sizes");
    return ns;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::ios_base::failure("failed writing '" + path + "'");
}

/// Certificate from the config. Constants given on the command line take precedence over
/// estimates; M2 defaults to the trapezium value computed from the kernel.
inline Certificate make_certificate(const CliConfig& c, const Problem& problem) {
    if (!c.m) throw ArgumentError("--M is required");
    if (!c.estimate && (!c.l0 || !c.l1 || !c.l2))
        throw ArgumentError("give --L0, --L1 and --L2, or --estimate");
    const double m2 = c.m2 ? *c.m2 : kernel_bound_m2(problem.kernel_function(), kDefaultM2Grid);
    ContractionInputs in{*c.m, c.l0.value_or(0.0), c.l1.value_or(0.0), c.l2.value_or(0.0), m2};
    if (c.estimate) {
        const auto est = lipschitz_estimate(problem, DomainBox::make(*c.m, m2), c.samples, c.seed);
        if (!c.l0) in.l0 = est.l0;
        if (!c.l1) in.l1 = est.l1;
        if (!c.l2) in.l2 = est.l2;
    }
    Certificate cert = contraction_check(in);
    cert.sup_ok = sup_f_check(problem, DomainBox::make(*c.m, m2), c.density).ok;
    if (c.positivity) cert.positivity_ok = positivity_check(problem, *c.m, c.density, m2).ok;
    return cert;
}

inline int run_solve(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const Problem problem = make_problem(c);
    const StoppingRule rule = make_rule(c);
    if (c.m && c.l0 && c.l1 && c.l2) {
        const Certificate cert = make_certificate(c, problem);
        if (!cert.contraction_ok)
            err << "warning: contraction hypothesis fails (q = " << sci5(cert.q) << "); iterating anyway\n";
    }
    const Solution s = solve(problem, GridSpec(c.n), rule);

    if (c.json) {
        out << to_json(s).dump(2) << '\n';
    } else {
        out << "problem     " << problem.name() << '\n'
            << "N           " << s.grid.n() << '\n'
            << "iterations  " << s.iterations << '\n'
            << "residual    " << sci5(s.final_residual()) << '\n';
        if (s.error) {
            out << "error_u     " << sci5(s.error->u) << '\n';
            if (s.error->v) out << "error_v     " << sci5(*s.error->v) << '\n';
        }
        out << "max|U|      " << sci5(max_abs(s.u)) << '\n' << "max|V|      " << sci5(max_abs(s.v)) << '\n';
    }
    if (!c.out_path.empty()) {
        std::ostringstream csv;
        write_csv(s, csv);
        write_file(c.out_path, csv.str());
    }
    if (!c.plot_path.empty()) emit_svg(s, c.plot_path);
    return kOk;
}

inline std::string format_order(double order) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", order);
    return buf;
}

inline int run_study(const CliConfig& c, std::ostream& out, std::ostream& /*err*/) {
    const Problem problem = make_problem(c);
    const StoppingRule rule = make_rule(c);
    const std::vector<int> ns = parse_grids(c.grids.empty() ? std::to_string(c.n) : c.grids);
    const auto rows = convergence_table(problem, ns, rule);
    const auto orders = observed_order(rows);

    if (c.json) {
        out << to_json(std::span<const StudyRow>(rows)).dump(2) << '\n';
    } else {
        const bool residual = rows.front().metric == StudyMetric::residual;
        const bool with_order = rows.size() > 1;
        out << "N       h2          m    " << (residual ? "residual" : "error     ") << (with_order ? "  order" : "")
            << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            char line[128];
            std::snprintf(line, sizeof line, "%-7d %s  %-4d %s", r.n, sci5(r.h2).c_str(), r.iterations,
                          sci5(r.error).c_str());
            out << line;
            if (with_order) {
                if (i == 0) out << "  -";
                else if (orders[i - 1]) out << "  " << format_order(*orders[i - 1]);
                else out << "  n/a";
            }
            out << '\n';
        }
    }
    if (!c.out_path.empty()) {
        std::ostringstream csv;
        write_csv(std::span<const StudyRow>(rows), csv);
        write_file(c.out_path, csv.str());
    }
    return kOk;
}

inline int run_certify(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const Problem problem = make_problem(c);
    const Certificate cert = make_certificate(c, problem);
    if (c.json) out << to_json(cert).dump(2) << '\n';
    else out << to_text(cert);
    if (!cert.contraction_ok) {
        err << "contraction hypothesis fails: q = " << sci5(cert.q) << " >= 1\n";
        return kNotContractive;
    }
    return kOk;
}

inline int run_list(const CliConfig& c, std::ostream& out) {
    if (c.json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& e : registry()) j.push_back({{"name", e.name}, {"description", e.description}});
        out << j.dump(2) << '\n';
    } else {
        for (const auto& e : registry()) out << e.name << "  " << e.description << '\n';
    }
    return kOk;
}

}  // namespace detail

/// Parses argv and dispatches. All output goes to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig c;
    CLI::App app{"Green's-function fixed-point solver for u'''' = f(x, u, u', int k(x,t) u(t) dt) "
                 "with u(0)=u(1)=u''(0)=u''(1)=0"};
    app.require_subcommand(1);

    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--example", c.example, "built-in problem (see list-examples)");
        sub->add_option("--f", c.f_text, "f(x,u,v,z) expression");
        sub->add_option("--kernel", c.kernel_text, "k(x,t) expression");
        sub->add_option("--exact", c.exact_text, "exact solution u(x) expression");
        sub->add_flag("--json", c.json, "machine-readable output");
    };
    auto add_iteration = [&](CLI::App* sub) {
        sub->add_option("--n", c.n, "number of grid intervals N (h = 1/N)");
        sub->add_option("--criterion", c.criterion, "successive | exact");
        sub->add_option("--eps", c.eps, "tolerance for ||Phi_m - Phi_{m-1}||");
        sub->add_option("--max-iter", c.max_iter, "iteration cap");
        sub->add_option("--out", c.out_path, "CSV output path");
    };
    auto add_certificate = [&](CLI::App* sub) {
        sub->add_option("--M", c.m, "bound M of the domain D_M");
        sub->add_option("--L0", c.l0, "Lipschitz constant of f in u");
        sub->add_option("--L1", c.l1, "Lipschitz constant of f in v");
        sub->add_option("--L2", c.l2, "Lipschitz constant of f in z");
        sub->add_option("--M2", c.m2, "max_x int |k(x,t)| dt (computed from the kernel if omitted)");
        sub->add_flag("--estimate", c.estimate, "estimate missing Lipschitz constants by sampling");
        sub->add_option("--samples", c.samples, "random pairs per argument for --estimate");
        sub->add_option("--density", c.density, "samples per axis for the sup and positivity checks");
        sub->add_option("--seed", c.seed, "random seed for --estimate");
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve one problem");
    add_problem(solve_cmd);
    add_iteration(solve_cmd);
    add_certificate(solve_cmd);
    solve_cmd->add_option("--plot", c.plot_path, "SVG plot output path");

    auto* study_cmd = app.add_subcommand("study", "grid-refinement study");
    add_problem(study_cmd);
    add_iteration(study_cmd);
    study_cmd->add_option("--grids", c.grids, "comma-separated grid sizes, e.g. 50,100,200");

    auto* certify_cmd = app.add_subcommand("certify", "check the contraction hypotheses");
    add_problem(certify_cmd);
    add_certificate(certify_cmd);
    certify_cmd->add_flag("--positivity", c.positivity, "also check the positive-solution hypotheses");

    auto* list_cmd = app.add_subcommand("list-examples", "list built-in problems");
    list_cmd->add_flag("--json", c.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    }

    try {
        if (solve_cmd->parsed()) return detail::run_solve(c, out, err);
        if (study_cmd->parsed()) return detail::run_study(c, out, err);
        if (certify_cmd->parsed()) return detail::run_certify(c, out, err);
        return detail::run_list(c, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kEvaluationError;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    } catch (const NonConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const EvaluationError& e) {
        err << "error: " << e.what() << '\n';
        return kEvaluationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("navier4");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace navier4::cli
