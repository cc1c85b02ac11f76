#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "h2net/network.hpp"

namespace h2net {

/// Steady state of a network for one instance of boundary data. Vectors are
/// indexed like the network's nodes and edges. p2 is authoritative; pressures
/// are only materialized on output.
struct Solution {
    Eigen::VectorXd q;         ///< mixture flow per edge
    Eigen::VectorXd eta_node;  ///< hydrogen fraction per node
    Eigen::VectorXd eta_edge;  ///< hydrogen fraction carried by each edge
    Eigen::VectorXd p2;        ///< squared pressure per node
    std::vector<std::string> warnings;

    Eigen::VectorXd pressures() const { return p2.array().sqrt().matrix(); }
};

/// eta_e = eta_{f(e)} if q_e >= 0, else eta_{h(e)}.
Eigen::VectorXd edge_compositions(const Network& network, const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& eta_node);

}  // namespace h2net
