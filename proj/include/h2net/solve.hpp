#pragma once

// Solver dispatch by cycle count and run reports.

#include <optional>
#include <string>
#include <vector>

#include "h2net/cut_solver.hpp"
#include "h2net/network.hpp"
#include "h2net/residual.hpp"
#include "h2net/solution.hpp"

namespace h2net {

enum class SolverKind { automatic, tree, cut, lm };

SolverKind parse_solver_kind(const std::string& name);
std::string to_string(SolverKind kind);

struct SolveOptions {
    SolverKind solver = SolverKind::automatic;
    CutOptions cut;
    LmOptions lm;
};

struct RunReport {
    SolverKind solver_used = SolverKind::tree;
    double residual_max = 0.0;
    int iterations = 0;
    std::vector<std::string> warnings;
    Solution solution;
    std::optional<double> lambda_star;
    std::optional<double> mu_star;
    std::optional<std::string> cut_edge;
};

/// automatic: tree solver for 0 cycles, cut solver for 1, LM otherwise.
/// residual_max is recomputed from the full residual for every solver.
RunReport solve_network(const Network& network, const SolveOptions& options = {});

}  // namespace h2net
