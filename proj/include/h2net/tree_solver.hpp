#pragma once

// Direct solver for tree-shaped networks: flows by leaf elimination,
// compositions by a sweep in flow order, pressures by a traversal from the
// anchor.

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "h2net/network.hpp"
#include "h2net/solution.hpp"

namespace h2net {

/// Unique q with A q = b. Throws NotATreeError for networks with cycles.
Eigen::VectorXd solve_flows(const Network& network);

struct CompositionResult {
    Eigen::VectorXd eta;
    std::vector<std::string> warnings;
};

/// Perfect mixing solved node by node in topological order of the flow graph.
///
/// Works for any flow whose flow graph is acyclic. A node with no inflow, no
/// supply and no outflow gets eta = 0 and a warning; one that has outflow but
/// nothing feeding it raises CompositionUndefinedError. `priority` overrides
/// the tie-break order of the topological sort.
CompositionResult solve_compositions(const Network& network, const Eigen::VectorXd& q,
                                     std::span<const Index> priority = {});

/// Squared pressures on a tree, walking outward from the anchor node.
/// Throws InfeasibleError when a pipe is longer than its critical length.
Eigen::VectorXd solve_pressures(const Network& network, const Eigen::VectorXd& q,
                                const Eigen::VectorXd& eta_node);

Solution solve_tree(const Network& network);

}  // namespace h2net
