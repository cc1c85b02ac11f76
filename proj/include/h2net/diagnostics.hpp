#pragma once

// Structural checks on a computed solution.

#include <Eigen/Dense>

#include "h2net/network.hpp"
#include "h2net/solution.hpp"

namespace h2net {

/// True if some cycle carries flow consistently in one direction: every edge
/// along it has a(v_e, e) q_e >= 0 (or every one <= 0) and at least one is
/// nonzero. Flows with |q| <= zero_tol count as zero.
bool has_circular_flow(const Network& network, const Eigen::VectorXd& q, double zero_tol = 1e-12);

/// Largest nodal imbalance of hydrogen mass: inflowing hydrogen plus supplied
/// hydrogen minus eta_v times the total inflow.
double hydrogen_imbalance(const Network& network, const Solution& solution);

/// Largest gap between p2 differences and the pressure drops summed along
/// spanning-tree paths from the anchor, and along every remaining edge.
double pressure_path_gap(const Network& network, const Solution& solution);

}  // namespace h2net
