#include "h2net/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>
#include <sstream>

namespace h2net {

namespace {

std::string format_number(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Compensated sum of the loads together with the sum of magnitudes.
std::pair<double, double> kahan_load_sum(const std::vector<Node>& nodes)
{
    double sum = 0.0, c = 0.0, mag = 0.0;
    for (const auto& n : nodes) {
        const double y = n.load - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
        mag += std::abs(n.load);
    }
    return {sum, mag};
}

}  // namespace

Network::Network(std::vector<Node> nodes, std::vector<Edge> edges, GasConstants gas)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), gas_(gas)
{
    for (Index v = 0; v < nodes_.size(); ++v) {
        if (!node_lookup_.emplace(nodes_[v].id, v).second) {
            throw InvalidNetworkError("duplicate node id '" + nodes_[v].id + "'");
        }
    }
    incident_.resize(nodes_.size());
    foot_.reserve(edges_.size());
    head_.reserve(edges_.size());
    for (Index e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (!edge_lookup_.emplace(edge.id, e).second) {
            throw InvalidNetworkError("duplicate edge id '" + edge.id + "'");
        }
        const auto f = find_node(edge.foot);
        const auto h = find_node(edge.head);
        if (!f || !h) {
            throw InvalidNetworkError("edge '" + edge.id + "' references unknown node '" +
                                      (f ? edge.head : edge.foot) + "'");
        }
        foot_.push_back(*f);
        head_.push_back(*h);
        incident_[*f].push_back(e);
        if (*h != *f) {
            incident_[*h].push_back(e);
        }
    }
}

std::optional<Index> Network::find_node(const std::string& id) const
{
    const auto it = node_lookup_.find(id);
    if (it == node_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<Index> Network::find_edge(const std::string& id) const
{
    const auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Index Network::node_index(const std::string& id) const
{
    if (auto v = find_node(id)) {
        return *v;
    }
    throw LookupError("unknown node id '" + id + "'");
}

Index Network::edge_index(const std::string& id) const
{
    if (auto e = find_edge(id)) {
        return *e;
    }
    throw LookupError("unknown edge id '" + id + "'");
}

Eigen::MatrixXd Network::incidence_matrix() const
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nodes_.size(), edges_.size());
    for (Index e = 0; e < edges_.size(); ++e) {
        a(foot_[e], e) = -1.0;
        a(head_[e], e) = 1.0;
    }
    return a;
}

Eigen::VectorXd Network::loads() const
{
    Eigen::VectorXd b(nodes_.size());
    for (Index v = 0; v < nodes_.size(); ++v) {
        b[v] = nodes_[v].load;
    }
    return b;
}

Index Network::anchor() const
{
    std::optional<Index> found;
    for (Index v = 0; v < nodes_.size(); ++v) {
        if (nodes_[v].pressure_anchor) {
            if (found) {
                throw InvalidNetworkError("more than one pressure anchor");
            }
            found = v;
        }
    }
    if (!found) {
        throw InvalidNetworkError("no pressure anchor");
    }
    return *found;
}

Network Network::with_boundary(Index v, double load, std::optional<double> zeta) const
{
    auto nodes = nodes_;
    nodes[v].load = load;
    nodes[v].zeta = zeta;
    return Network(std::move(nodes), edges_, gas_);
}

bool Network::is_connected() const
{
    if (nodes_.empty()) {
        return true;
    }
    std::vector<char> seen(nodes_.size(), 0);
    std::deque<Index> queue{0};
    seen[0] = 1;
    Index count = 1;
    while (!queue.empty()) {
        const Index v = queue.front();
        queue.pop_front();
        for (Index e : incident_[v]) {
            const Index w = foot_[e] == v ? head_[e] : foot_[e];
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                queue.push_back(w);
            }
        }
    }
    return count == nodes_.size();
}

bool Network::is_tree() const
{
    return !nodes_.empty() && edges_.size() + 1 == nodes_.size() && is_connected();
}

Index Network::cycle_rank() const
{
    return edges_.size() + 1 - std::min<Index>(nodes_.size(), edges_.size() + 1);
}

std::vector<Violation> validate(const Network& network)
{
    using K = Violation::Kind;
    std::vector<Violation> out;
    const auto& gas = network.gas();
    if (!(gas.sigma2_h2 > gas.sigma2_ng && gas.sigma2_ng > 0.0)) {
        out.push_back({K::invalid_gas_constants, {}, "gas constants must satisfy sigma2_h2 > sigma2_ng > 0"});
    }
    if (!(gas.diameter > 0.0 && gas.friction > 0.0)) {
        out.push_back({K::invalid_gas_constants, {}, "default diameter and friction must be positive"});
    }

    for (const auto& e : network.edges()) {
        if (e.foot == e.head) {
            out.push_back({K::self_loop, e.id, "edge '" + e.id + "' is a self-loop"});
        }
        const std::pair<const char*, double> params[] = {
            {"length", e.length}, {"diameter", e.diameter}, {"friction", e.friction}};
        for (const auto& [name, value] : params) {
            if (!(value > 0.0)) {
                out.push_back({K::nonpositive_parameter, e.id,
                               "edge '" + e.id + "' has nonpositive " + name + " " + format_number(value)});
            }
        }
    }

    Index anchors = 0;
    for (const auto& n : network.nodes()) {
        if (n.load < 0.0 && !n.zeta) {
            out.push_back({K::missing_supply_composition, n.id,
                           "supply node '" + n.id + "' has no supply composition"});
        }
        if (n.load >= 0.0 && n.zeta) {
            out.push_back({K::unexpected_supply_composition, n.id,
                           "node '" + n.id + "' has load >= 0 but carries a supply composition"});
        }
        if (n.zeta && !(*n.zeta >= 0.0 && *n.zeta <= 1.0)) {
            out.push_back({K::composition_out_of_range, n.id,
                           "supply composition of '" + n.id + "' outside [0,1]: " + format_number(*n.zeta)});
        }
        if (n.pressure_anchor) {
            ++anchors;
            if (!(*n.pressure_anchor > 0.0)) {
                out.push_back({K::nonpositive_anchor, n.id, "pressure anchor at '" + n.id + "' is not positive"});
            }
        }
    }
    if (anchors != 1) {
        out.push_back({K::anchor_count, {}, "pressure anchor count != 1 (found " + std::to_string(anchors) + ")"});
    }

    const auto [sum, magnitude] = kahan_load_sum(network.nodes());
    if (std::abs(sum) > 1e-12 * std::max(1.0, magnitude)) {
        out.push_back({K::loads_not_balanced, {}, "loads do not sum to zero (sum = " + format_number(sum) + ")"});
    }
    if (!network.is_connected()) {
        out.push_back({K::disconnected, {}, "network is not connected"});
    }
    return out;
}

int incidence_entry(const Network& network, const std::string& node_id, const std::string& edge_id)
{
    return network.incidence(network.node_index(node_id), network.edge_index(edge_id));
}

DiGraph flow_oriented(const Network& network, std::span<const double> q)
{
    if (q.size() != network.edge_count()) {
        throw DomainError("flow vector size does not match edge count");
    }
    DiGraph g;
    g.node_ids.reserve(network.node_count());
    for (const auto& n : network.nodes()) {
        g.node_ids.push_back(n.id);
    }
    g.arcs.reserve(network.edge_count());
    for (Index e = 0; e < network.edge_count(); ++e) {
        if (q[e] >= 0.0) {
            g.arcs.emplace_back(network.foot(e), network.head(e));
        } else {
            g.arcs.emplace_back(network.head(e), network.foot(e));
        }
    }
    return g;
}

DiGraph flow_oriented(const Network& network, const Eigen::VectorXd& q)
{
    return flow_oriented(network, std::span<const double>(q.data(), static_cast<std::size_t>(q.size())));
}

std::vector<Index> topological_order(const DiGraph& graph, std::span<const Index> priority)
{
    const Index n = graph.node_ids.size();
    if (!priority.empty() && priority.size() != n) {
        throw DomainError("priority vector size does not match node count");
    }
    std::vector<Index> indegree(n, 0);
    std::vector<std::vector<Index>> out(n);
    for (const auto& [from, to] : graph.arcs) {
        out[from].push_back(to);
        ++indegree[to];
    }

    auto later = [&](Index a, Index b) {
        if (!priority.empty()) {
            return priority[a] > priority[b];
        }
        return graph.node_ids[a] > graph.node_ids[b];
    };
    std::priority_queue<Index, std::vector<Index>, decltype(later)> ready(later);
    for (Index v = 0; v < n; ++v) {
        if (indegree[v] == 0) {
            ready.push(v);
        }
    }

    std::vector<Index> order;
    order.reserve(n);
    while (!ready.empty()) {
        const Index v = ready.top();
        ready.pop();
        order.push_back(v);
        for (Index w : out[v]) {
            if (--indegree[w] == 0) {
                ready.push(w);
            }
        }
    }
    if (order.size() != n) {
        throw NotAcyclicError();
    }
    return order;
}

std::vector<Cycle> find_cycles(const Network& network)
{
    const Index n = network.node_count();
    std::vector<Cycle> cycles;
    if (n == 0) {
        return cycles;
    }

    constexpr Index none = static_cast<Index>(-1);
    std::vector<Index> parent(n, none), parent_edge(n, none), depth(n, 0);
    std::vector<char> seen(n, 0), tree_edge(network.edge_count(), 0);
    for (Index root = 0; root < n; ++root) {
        if (seen[root]) {
            continue;
        }
        seen[root] = 1;
        std::deque<Index> queue{root};
        while (!queue.empty()) {
            const Index v = queue.front();
            queue.pop_front();
            for (Index e : network.incident(v)) {
                const Index w = network.foot(e) == v ? network.head(e) : network.foot(e);
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    parent_edge[w] = e;
                    depth[w] = depth[v] + 1;
                    tree_edge[e] = 1;
                    queue.push_back(w);
                }
            }
        }
    }

    for (Index e = 0; e < network.edge_count(); ++e) {
        if (tree_edge[e] || network.foot(e) == network.head(e)) {
            continue;
        }
        // Walk both endpoints up to their lowest common ancestor.
        Index a = network.foot(e), b = network.head(e);
        std::vector<Index> up_a{a}, up_b{b}, edges_a, edges_b;
        while (a != b) {
            if (depth[a] >= depth[b]) {
                edges_a.push_back(parent_edge[a]);
                a = parent[a];
                up_a.push_back(a);
            } else {
                edges_b.push_back(parent_edge[b]);
                b = parent[b];
                up_b.push_back(b);
            }
        }
        // nodes: foot ... lca ... head, closed by e back to the foot.
        Cycle c;
        c.nodes = up_a;
        c.edges = edges_a;
        for (Index i = up_b.size() - 1; i-- > 0;) {
            c.nodes.push_back(up_b[i]);
        }
        for (Index i = edges_b.size(); i-- > 0;) {
            c.edges.push_back(edges_b[i]);
        }
        c.edges.push_back(e);
        cycles.push_back(std::move(c));
    }
    return cycles;
}

Network CutGraph::with_boundary(double lambda, double mu) const
{
    auto nodes = derived.nodes();
    auto& left = nodes[left_node];
    auto& right = nodes[right_node];
    left.load = lambda;
    right.load = -lambda;
    left.zeta.reset();
    right.zeta.reset();
    if (lambda < 0.0) {
        left.zeta = mu;
    } else if (lambda > 0.0) {
        right.zeta = mu;
    }
    return Network(std::move(nodes), derived.edges(), derived.gas());
}

CutGraph cut(const Network& network, const std::string& cut_edge)
{
    return cut(network, network.edge_index(cut_edge));
}

CutGraph cut(const Network& network, Index cut_edge)
{
    if (cut_edge >= network.edge_count()) {
        throw LookupError("cut edge index out of range");
    }
    const Edge& ec = network.edge(cut_edge);

    auto nodes = network.nodes();
    Node left{ec.id + ":cl", 0.0, std::nullopt, std::nullopt};
    Node right{ec.id + ":cr", 0.0, std::nullopt, std::nullopt};
    while (network.find_node(left.id)) {
        left.id += "'";
    }
    while (network.find_node(right.id)) {
        right.id += "'";
    }
    nodes.push_back(left);
    nodes.push_back(right);

    std::vector<Edge> edges;
    edges.reserve(network.edge_count() + 1);
    for (Index e = 0; e < network.edge_count(); ++e) {
        if (e != cut_edge) {
            edges.push_back(network.edge(e));
        }
    }
    Edge left_stub = ec;
    left_stub.id = ec.id + ":cl";
    left_stub.head = left.id;
    left_stub.length = 0.5 * ec.length;
    Edge right_stub = ec;
    right_stub.id = ec.id + ":cr";
    right_stub.foot = right.id;
    right_stub.length = 0.5 * ec.length;
    while (network.find_edge(left_stub.id)) {
        left_stub.id += "'";
    }
    while (network.find_edge(right_stub.id)) {
        right_stub.id += "'";
    }
    edges.push_back(left_stub);
    edges.push_back(right_stub);

    CutGraph cg;
    cg.base = network;
    cg.cut_edge = cut_edge;
    cg.derived = Network(std::move(nodes), std::move(edges), network.gas());
    cg.left_node = network.node_count();
    cg.right_node = network.node_count() + 1;
    cg.left_stub = network.edge_count() - 1;
    cg.right_stub = network.edge_count();

    // The cut edge is a bridge iff removing it disconnects the base nodes.
    std::vector<Edge> remaining;
    for (Index e = 0; e < network.edge_count(); ++e) {
        if (e != cut_edge) {
            remaining.push_back(network.edge(e));
        }
    }
    cg.splits_network = !Network(network.nodes(), std::move(remaining), network.gas()).is_connected();
    return cg;
}

}  // namespace h2net
