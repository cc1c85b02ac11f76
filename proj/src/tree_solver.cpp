#include "h2net/tree_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "h2net/gas.hpp"

namespace h2net {

Eigen::VectorXd edge_compositions(const Network& network, const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& eta_node)
{
    Eigen::VectorXd eta_edge(network.edge_count());
    for (Index e = 0; e < network.edge_count(); ++e) {
        eta_edge[e] = q[e] >= 0.0 ? eta_node[network.foot(e)] : eta_node[network.head(e)];
    }
    return eta_edge;
}

Eigen::VectorXd solve_flows(const Network& network)
{
    if (!network.is_tree()) {
        throw NotATreeError("network is not tree-shaped (" + std::to_string(network.cycle_rank()) +
                            " cycles); use the cut or Levenberg-Marquardt solver");
    }
    const Index n = network.node_count();
    Eigen::VectorXd q = Eigen::VectorXd::Zero(network.edge_count());
    std::vector<double> remaining(n);
    std::vector<Index> degree(n);
    std::vector<char> solved_edge(network.edge_count(), 0), eliminated(n, 0);
    for (Index v = 0; v < n; ++v) {
        remaining[v] = network.node(v).load;
        degree[v] = network.incident(v).size();
    }

    std::deque<Index> leaves;
    for (Index v = 0; v < n; ++v) {
        if (degree[v] == 1) {
            leaves.push_back(v);
        }
    }
    while (!leaves.empty()) {
        const Index v = leaves.front();
        leaves.pop_front();
        if (eliminated[v] || degree[v] != 1) {
            continue;
        }
        const auto& inc = network.incident(v);
        const auto it = std::find_if(inc.begin(), inc.end(), [&](Index e) { return !solved_edge[e]; });
        const Index e = *it;
        // a(v,e) q_e = remaining load, a = +-1
        q[e] = network.incidence(v, e) * remaining[v];
        solved_edge[e] = 1;
        eliminated[v] = 1;
        const Index w = network.foot(e) == v ? network.head(e) : network.foot(e);
        remaining[w] -= network.incidence(w, e) * q[e];
        if (--degree[w] == 1) {
            leaves.push_back(w);
        }
    }
    return q;
}

CompositionResult solve_compositions(const Network& network, const Eigen::VectorXd& q,
                                     std::span<const Index> priority)
{
    const auto order = topological_order(flow_oriented(network, q), priority);
    const double scale = std::max(1.0, q.size() > 0 ? q.cwiseAbs().maxCoeff() : 0.0);

    CompositionResult result;
    result.eta = Eigen::VectorXd::Zero(network.node_count());
    for (Index v : order) {
        const Node& node = network.node(v);
        const double supply = node.load < 0.0 ? -node.load : 0.0;
        double hydrogen = supply > 0.0 ? *node.zeta * supply : 0.0;
        double gas = supply;
        double outflow = 0.0;
        for (Index e : network.incident(v)) {
            const double aq = network.incidence(v, e) * q[e];
            if (aq > 0.0) {
                const Index w = network.foot(e) == v ? network.head(e) : network.foot(e);
                hydrogen += result.eta[w] * aq;
                gas += aq;
            } else {
                outflow -= aq;
            }
        }
        if (gas > 0.0) {
            result.eta[v] = std::clamp(hydrogen / gas, 0.0, 1.0);
        } else if (outflow > 1e-12 * scale) {
            throw CompositionUndefinedError(node.id);
        } else {
            result.eta[v] = 0.0;
            result.warnings.push_back("composition of node '" + node.id +
                                      "' is undetermined (no throughflow); set to 0");
        }
    }
    return result;
}

Eigen::VectorXd solve_pressures(const Network& network, const Eigen::VectorXd& q,
                                const Eigen::VectorXd& eta_node)
{
    if (!network.is_tree()) {
        throw NotATreeError("pressure traversal requires a tree-shaped network");
    }
    const Index anchor = network.anchor();
    const GasConstants& gas = network.gas();
    Eigen::VectorXd p2 = Eigen::VectorXd::Constant(network.node_count(), std::nan(""));
    const double p_star = network.anchor_pressure();
    p2[anchor] = p_star * p_star;

    std::vector<char> known(network.node_count(), 0);
    known[anchor] = 1;
    std::deque<Index> queue{anchor};
    while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop_front();
        for (Index e : network.incident(u)) {
            const Index f = network.foot(e), h = network.head(e);
            const Index w = f == u ? h : f;
            if (known[w]) {
                continue;
            }
            const Pipe pipe = network.edge(e).pipe();
            const double drop = pressure_drop_squared(eta_node[f], eta_node[h], q[e], pipe, gas);
            p2[w] = f == u ? p2[u] + drop : p2[u] - drop;
            if (!(p2[w] > 0.0)) {
                // Failure can only happen walking downstream, so u is the inlet.
                const double eta_e = q[e] >= 0.0 ? eta_node[f] : eta_node[h];
                const double l_crit =
                    critical_length(std::sqrt(p2[u]), eta_e, std::abs(q[e]), pipe.diameter, pipe.friction, gas);
                std::ostringstream os;
                os.precision(10);
                os << "infeasible: squared pressure at node '" << network.node(w).id
                   << "' is nonpositive; pipe '" << network.edge(e).id << "' has length " << pipe.length
                   << " but its critical length is " << l_crit;
                throw InfeasibleError(os.str(), network.edge(e).id, pipe.length, l_crit);
            }
            known[w] = 1;
            queue.push_back(w);
        }
    }
    return p2;
}

Solution solve_tree(const Network& network)
{
    Solution s;
    s.q = solve_flows(network);
    auto comp = solve_compositions(network, s.q);
    s.eta_node = std::move(comp.eta);
    s.warnings = std::move(comp.warnings);
    s.eta_edge = edge_compositions(network, s.q, s.eta_node);
    s.p2 = solve_pressures(network, s.q, s.eta_node);
    return s;
}

}  // namespace h2net
