#include "h2net/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "h2net/gas.hpp"

namespace h2net {

bool has_circular_flow(const Network& network, const Eigen::VectorXd& q, double zero_tol)
{
    // Arcs follow the flow; edges carrying no flow can be walked both ways.
    const Index n = network.node_count();
    std::vector<std::vector<std::pair<Index, Index>>> out(n);
    for (Index e = 0; e < network.edge_count(); ++e) {
        const Index f = network.foot(e), h = network.head(e);
        if (q[e] > zero_tol) {
            out[f].push_back({h, e});
        } else if (q[e] < -zero_tol) {
            out[h].push_back({f, e});
        } else {
            out[f].push_back({h, e});
            out[h].push_back({f, e});
        }
    }
    // A circular flow exists iff some flowing arc u->w can be closed by a walk w->u.
    for (Index e = 0; e < network.edge_count(); ++e) {
        if (std::abs(q[e]) <= zero_tol) {
            continue;
        }
        const Index u = q[e] > 0.0 ? network.foot(e) : network.head(e);
        const Index w = q[e] > 0.0 ? network.head(e) : network.foot(e);
        std::vector<char> seen(n, 0);
        std::deque<Index> queue{w};
        seen[w] = 1;
        while (!queue.empty()) {
            const Index v = queue.front();
            queue.pop_front();
            if (v == u) {
                return true;
            }
            for (const auto& [x, arc_edge] : out[v]) {
                if (arc_edge != e && !seen[x]) {
                    seen[x] = 1;
                    queue.push_back(x);
                }
            }
        }
    }
    return false;
}

double hydrogen_imbalance(const Network& network, const Solution& s)
{
    double worst = 0.0;
    for (Index v = 0; v < network.node_count(); ++v) {
        const Node& node = network.node(v);
        const double supply = std::max(-node.load, 0.0);
        double inflow = supply;
        double hydrogen = supply > 0.0 ? node.zeta.value_or(0.0) * supply : 0.0;
        for (Index e : network.incident(v)) {
            const double aq = network.incidence(v, e) * s.q[e];
            if (aq > 0.0) {
                inflow += aq;
                hydrogen += s.eta_edge[e] * aq;
            }
        }
        worst = std::max(worst, std::abs(hydrogen - s.eta_node[v] * inflow));
    }
    return worst;
}

double pressure_path_gap(const Network& network, const Solution& s)
{
    const GasConstants& gas = network.gas();
    auto drop = [&](Index e) {
        const Index f = network.foot(e), h = network.head(e);
        return sigma_tilde_affine(s.eta_node[f], s.eta_node[h], s.q[e], network.edge(e).pipe(), gas) * s.q[e] *
               std::abs(s.q[e]);
    };

    const Index anchor = network.anchor();
    std::vector<double> walked(network.node_count(), 0.0);
    std::vector<char> seen(network.node_count(), 0), tree_edge(network.edge_count(), 0);
    walked[anchor] = s.p2[anchor];
    seen[anchor] = 1;
    std::deque<Index> queue{anchor};
    while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop_front();
        for (Index e : network.incident(u)) {
            const Index w = network.foot(e) == u ? network.head(e) : network.foot(e);
            if (seen[w]) {
                continue;
            }
            seen[w] = 1;
            tree_edge[e] = 1;
            walked[w] = network.foot(e) == u ? walked[u] + drop(e) : walked[u] - drop(e);
            queue.push_back(w);
        }
    }

    double worst = 0.0;
    for (Index v = 0; v < network.node_count(); ++v) {
        worst = std::max(worst, std::abs(walked[v] - s.p2[v]));
    }
    for (Index e = 0; e < network.edge_count(); ++e) {
        if (!tree_edge[e]) {
            const double gap = s.p2[network.head(e)] - s.p2[network.foot(e)] - drop(e);
            worst = std::max(worst, std::abs(gap));
        }
    }
    return worst;
}

}  // namespace h2net
