// h2net: validate, solve and sweep hydrogen-blend gas networks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "h2net/cut_solver.hpp"
#include "h2net/io.hpp"
#include "h2net/solve.hpp"
#include "h2net/sweep.hpp"

namespace {

using namespace h2net;

enum Exit { exit_ok = 0, exit_invalid = 1, exit_parse = 2, exit_infeasible = 3, exit_convergence = 4 };

struct Args {
    std::string file;
    std::string cut_edge;
    std::vector<double> lambda_range;
    int n_lambda = 50;
    int n_mu = 51;
    std::string solver = "auto";
    std::string inner = "auto";
    std::string range_rule = "total-supply";
    std::optional<double> tol_p;
    std::optional<int> max_iter;
    std::optional<double> nu0;
    unsigned threads = 0;
    std::string out;
};

Network load(const Args& a)
{
    GasConstants defaults;
    if (const char* gas_file = std::getenv("H2NET_GAS_FILE"); gas_file && *gas_file) {
        defaults = load_gas_file(gas_file);
    }
    return load_network(a.file, defaults);
}

bool report_violations(const Network& net)
{
    const auto violations = validate(net);
    for (const auto& v : violations) {
        std::cerr << "invalid: " << (v.subject.empty() ? "" : v.subject + ": ") << v.message << '\n';
    }
    return violations.empty();
}

SolveOptions solve_options(const Args& a)
{
    SolveOptions o;
    o.solver = parse_solver_kind(a.solver);
    if (!a.cut_edge.empty()) {
        o.cut.cut_edge = a.cut_edge;
    }
    if (a.tol_p) {
        o.cut.tol_p = *a.tol_p;
    }
    if (a.max_iter) {
        o.cut.max_iter = *a.max_iter;
        o.lm.max_iter = *a.max_iter;
    }
    if (a.nu0) {
        o.lm.nu0 = *a.nu0;
    }
    return o;
}

SweepOptions sweep_options(const Args& a)
{
    SweepOptions o;
    const SolveOptions s = solve_options(a);
    o.cut = s.cut;
    o.cut.cut_edge.reset();
    o.lm = s.lm;
    o.inner = a.inner == "lm" ? InnerSolver::lm : InnerSolver::automatic;
    o.threads = a.threads;
    return o;
}

std::string cut_edge_of(const Network& net, const Args& a)
{
    return a.cut_edge.empty() ? net.edge(default_cut_edge(net)).id : a.cut_edge;
}

std::pair<double, double> range_of(const Network& net, const std::string& ce, const Args& a)
{
    if (a.lambda_range.size() == 2) {
        return {a.lambda_range[0], a.lambda_range[1]};
    }
    return default_lambda_range(net, ce, a.range_rule == "load-sum" ? RangeRule::load_sum : RangeRule::total_supply);
}

template <typename Writer>
void write_to(const std::string& path, Writer&& writer)
{
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    writer(out);
}

int cmd_validate(const Args& a)
{
    const Network net = load(a);
    if (!report_violations(net)) {
        return exit_invalid;
    }
    std::cout << "valid: " << net.node_count() << " nodes, " << net.edge_count() << " edges, "
              << net.cycle_rank() << " cycles\n";
    return exit_ok;
}

int cmd_solve(const Args& a)
{
    const Network net = load(a);
    if (!report_violations(net)) {
        return exit_invalid;
    }
    const RunReport report = solve_network(net, solve_options(a));
    for (const auto& w : report.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    write_to(a.out, [&](std::ostream& os) { os << report_to_json(net, report).dump(2) << '\n'; });
    return exit_ok;
}

int cmd_sweep(const Args& a)
{
    const Network net = load(a);
    if (!report_violations(net)) {
        return exit_invalid;
    }
    if (net.cycle_rank() == 0) {
        std::cerr << "error: sweep needs a network with at least one cycle\n";
        return exit_invalid;
    }
    const std::string ce = cut_edge_of(net, a);
    const auto [lo, hi] = range_of(net, ce, a);
    const SweepOptions opts = sweep_options(a);
    const std::string prefix = a.out.empty() ? "sweep" : a.out;

    const SweepGrid grid = sweep(net, ce, lo, hi, a.n_lambda, a.n_mu, opts);
    const RootCurve rc = root_curve(net, ce, grid.lambda, opts);
    const GCurve g = restricted_g(net, ce, grid.lambda, opts);
    write_to(prefix + "_grid.csv", [&](std::ostream& os) { write_grid_csv(os, grid); });
    write_to(prefix + "_grid.json", [&](std::ostream& os) { write_grid_json(os, grid); });
    write_to(prefix + "_root_curve.csv", [&](std::ostream& os) { write_root_curve_csv(os, rc); });
    write_to(prefix + "_g.csv", [&](std::ostream& os) { write_g_csv(os, g); });

    const Index total = grid.status.size();
    const Index ok = grid.converged();
    std::cout << "cut edge " << ce << ", lambda in [" << lo << ", " << hi << "], " << ok << "/" << total
              << " grid points converged\n";
    for (Index i = 0; i + 1 < g.lambda.size(); ++i) {
        if (std::isfinite(g.g[i]) && std::isfinite(g.g[i + 1]) && (g.g[i] <= 0.0) != (g.g[i + 1] <= 0.0)) {
            std::cout << "g changes sign on [" << g.lambda[i] << ", " << g.lambda[i + 1] << "]\n";
        }
    }
    return 10 * ok >= 9 * total ? exit_ok : exit_convergence;
}

int cmd_curve(const Args& a, bool g_curve)
{
    const Network net = load(a);
    if (!report_violations(net)) {
        return exit_invalid;
    }
    const std::string ce = cut_edge_of(net, a);
    const auto [lo, hi] = range_of(net, ce, a);
    const auto lambda = linspace(lo, hi, a.n_lambda);
    const SweepOptions opts = sweep_options(a);
    if (g_curve) {
        const GCurve g = restricted_g(net, ce, lambda, opts);
        write_to(a.out, [&](std::ostream& os) { write_g_csv(os, g); });
    } else {
        const RootCurve rc = root_curve(net, ce, lambda, opts);
        write_to(a.out, [&](std::ostream& os) { write_root_curve_csv(os, rc); });
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Steady states of hydrogen-blended natural gas on pipe networks"};
    app.require_subcommand(1);
    Args a;

    auto add_file = [&](CLI::App* sub) { sub->add_option("network", a.file, "network JSON file")->required(); };
    auto add_cut = [&](CLI::App* sub) {
        sub->add_option("--cut-edge", a.cut_edge, "edge to cut (default: first cycle edge)");
    };
    auto add_solver_flags = [&](CLI::App* sub) {
        sub->add_option("--tol-p", a.tol_p, "bisection tolerance on |g| (default 1e-10)");
        sub->add_option("--max-iter", a.max_iter, "iteration cap for bisection / LM");
        sub->add_option("--nu0", a.nu0, "initial LM damping (default 1e-3)");
    };
    auto add_range = [&](CLI::App* sub) {
        sub->add_option("--lambda-range", a.lambda_range, "lambda interval a b")->expected(2);
        sub->add_option("--n-lambda", a.n_lambda, "number of lambda samples")->check(CLI::Range(2, 1000000));
        sub->add_option("--range-rule", a.range_rule, "default range for multi-cycle cut graphs")
            ->check(CLI::IsMember({"total-supply", "load-sum"}));
        sub->add_option("--inner-solver", a.inner, "solver on the cut graph")->check(CLI::IsMember({"auto", "lm"}));
        sub->add_option("--threads", a.threads, "worker threads (0 = all cores)");
    };

    auto* validate_cmd = app.add_subcommand("validate", "check network invariants");
    add_file(validate_cmd);

    auto* solve_cmd = app.add_subcommand("solve", "solve the steady state and print a JSON report");
    add_file(solve_cmd);
    add_cut(solve_cmd);
    add_solver_flags(solve_cmd);
    solve_cmd->add_option("--solver", a.solver, "solver")->check(CLI::IsMember({"auto", "tree", "cut", "lm"}));
    solve_cmd->add_option("--out", a.out, "report file (default stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate H_p and H_eta on a (lambda, mu) grid");
    add_file(sweep_cmd);
    add_cut(sweep_cmd);
    add_solver_flags(sweep_cmd);
    add_range(sweep_cmd);
    sweep_cmd->add_option("--n-mu", a.n_mu, "number of mu samples")->check(CLI::Range(2, 1000000));
    sweep_cmd->add_option("--out", a.out, "output prefix (default 'sweep')");

    auto* root_cmd = app.add_subcommand("root-curve", "root curve of H_eta as CSV");
    auto* g_cmd = app.add_subcommand("g-curve", "H_p restricted to the root curve as CSV");
    for (auto* sub : {root_cmd, g_cmd}) {
        add_file(sub);
        add_cut(sub);
        add_solver_flags(sub);
        add_range(sub);
        sub->add_option("--out", a.out, "CSV file (default stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse;
    }

    try {
        if (*validate_cmd) {
            return cmd_validate(a);
        }
        if (*solve_cmd) {
            return cmd_solve(a);
        }
        if (*sweep_cmd) {
            return cmd_sweep(a);
        }
        return cmd_curve(a, static_cast<bool>(*g_cmd));
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_convergence;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
}
