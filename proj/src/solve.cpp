#include "h2net/solve.hpp"

#include "h2net/tree_solver.hpp"

namespace h2net {

SolverKind parse_solver_kind(const std::string& name)
{
    if (name == "auto") {
        return SolverKind::automatic;
    }
    if (name == "tree") {
        return SolverKind::tree;
    }
    if (name == "cut") {
        return SolverKind::cut;
    }
    if (name == "lm") {
        return SolverKind::lm;
    }
    throw DomainError("unknown solver '" + name + "'");
}

std::string to_string(SolverKind kind)
{
    switch (kind) {
    case SolverKind::automatic:
        return "auto";
    case SolverKind::tree:
        return "tree";
    case SolverKind::cut:
        return "cut";
    case SolverKind::lm:
        return "lm";
    }
    return "unknown";
}

RunReport solve_network(const Network& network, const SolveOptions& options)
{
    SolverKind kind = options.solver;
    if (kind == SolverKind::automatic) {
        const Index rank = network.cycle_rank();
        kind = rank == 0 ? SolverKind::tree : (rank == 1 ? SolverKind::cut : SolverKind::lm);
    }

    RunReport report;
    report.solver_used = kind;
    switch (kind) {
    case SolverKind::tree:
        report.solution = solve_tree(network);
        break;
    case SolverKind::cut: {
        CutResult r = solve_single_cycle(network, options.cut);
        report.solution = std::move(r.solution);
        report.iterations = r.iterations;
        report.lambda_star = r.lambda_star;
        report.mu_star = r.mu_star;
        report.cut_edge = r.cut_edge;
        break;
    }
    case SolverKind::lm:
    case SolverKind::automatic: {
        LmResult r = solve_lm(network, default_init(network), options.lm);
        report.solution = std::move(r.solution);
        report.iterations = r.iterations;
        break;
    }
    }
    report.warnings = report.solution.warnings;
    report.residual_max = residual(network, report.solution).max_abs();
    return report;
}

}  // namespace h2net
