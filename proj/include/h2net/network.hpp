#pragma once

// Gas network data model and the graph algorithms the solvers share.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "h2net/gas.hpp"

namespace h2net {

using Index = std::size_t;

/// A junction. Negative load means supply; supplies carry a composition zeta.
struct Node {
    std::string id;
    double load = 0.0;
    std::optional<double> zeta;
    std::optional<double> pressure_anchor;

    bool operator==(const Node&) const = default;
};

/// A pipe from foot to head.
struct Edge {
    std::string id;
    std::string foot;
    std::string head;
    double length = 1.0;
    double diameter = 1.0;
    double friction = 0.01;

    Pipe pipe() const { return {length, diameter, friction}; }

    bool operator==(const Edge&) const = default;
};

/// One violated network invariant.
struct Violation {
    enum class Kind {
        self_loop,
        nonpositive_parameter,
        missing_supply_composition,
        unexpected_supply_composition,
        composition_out_of_range,
        nonpositive_anchor,
        anchor_count,
        loads_not_balanced,
        disconnected,
        invalid_gas_constants,
    };

    Kind kind;
    std::string subject;  ///< node or edge id, empty for network-wide violations
    std::string message;
};

/// Immutable directed multigraph with boundary data. Ids are resolved to dense
/// indices in input order.
class Network {
public:
    Network() = default;

    /// Throws InvalidNetworkError for duplicate ids or edges referencing
    /// unknown nodes. All other invariants are reported by validate().
    Network(std::vector<Node> nodes, std::vector<Edge> edges, GasConstants gas = {});

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const GasConstants& gas() const { return gas_; }

    Index node_count() const { return nodes_.size(); }
    Index edge_count() const { return edges_.size(); }

    const Node& node(Index v) const { return nodes_[v]; }
    const Edge& edge(Index e) const { return edges_[e]; }

    Index node_index(const std::string& id) const;
    Index edge_index(const std::string& id) const;
    std::optional<Index> find_node(const std::string& id) const;
    std::optional<Index> find_edge(const std::string& id) const;

    Index foot(Index e) const { return foot_[e]; }
    Index head(Index e) const { return head_[e]; }
    /// Edges incident to v, in edge order.
    const std::vector<Index>& incident(Index v) const { return incident_[v]; }

    /// a(v,e): -1 at the foot, +1 at the head, 0 otherwise.
    int incidence(Index v, Index e) const
    {
        return v == foot_[e] ? -1 : (v == head_[e] ? 1 : 0);
    }

    Eigen::MatrixXd incidence_matrix() const;
    Eigen::VectorXd loads() const;

    /// Index of the unique anchor node; throws if the anchor count is not one.
    Index anchor() const;
    double anchor_pressure() const { return *nodes_[anchor()].pressure_anchor; }

    /// Copy with one node's boundary data replaced.
    Network with_boundary(Index v, double load, std::optional<double> zeta) const;

    bool is_connected() const;
    /// Connected and |E| = |V| - 1.
    bool is_tree() const;
    Index cycle_rank() const;

    bool operator==(const Network& other) const
    {
        return nodes_ == other.nodes_ && edges_ == other.edges_ && gas_ == other.gas_;
    }

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    GasConstants gas_;
    std::unordered_map<std::string, Index> node_lookup_;
    std::unordered_map<std::string, Index> edge_lookup_;
    std::vector<Index> foot_;
    std::vector<Index> head_;
    std::vector<std::vector<Index>> incident_;
};

/// Every violated invariant; empty iff the network is valid.
std::vector<Violation> validate(const Network& network);

/// a(v,e) looked up by id.
int incidence_entry(const Network& network, const std::string& node_id, const std::string& edge_id);

/// Plain directed graph over dense node indices, carrying node ids for
/// deterministic tie-breaking.
struct DiGraph {
    std::vector<std::string> node_ids;
    std::vector<std::pair<Index, Index>> arcs;
};

/// The network with every edge oriented along its flow; q >= 0 keeps the
/// orientation. Arc k corresponds to edge k.
DiGraph flow_oriented(const Network& network, std::span<const double> q);
DiGraph flow_oriented(const Network& network, const Eigen::VectorXd& q);

/// Kahn's algorithm. Ready nodes are released by ascending node id, or by
/// ascending priority[v] when a priority vector is supplied.
std::vector<Index> topological_order(const DiGraph& graph, std::span<const Index> priority = {});

/// A cycle of the undirected graph: nodes in traversal order, edges[i] joins
/// nodes[i] and nodes[(i+1) % size].
struct Cycle {
    std::vector<Index> nodes;
    std::vector<Index> edges;
};

/// Fundamental cycle basis with respect to a BFS spanning tree rooted at node 0.
std::vector<Cycle> find_cycles(const Network& network);

/// A network with one edge split into two half-length stubs ending at two new
/// boundary nodes. Base nodes keep their indices; the base edge k maps to
/// derived edge k for k < cut_edge and k - 1 beyond it.
struct CutGraph {
    Network base;
    Index cut_edge = 0;
    Network derived;
    Index left_node = 0;   ///< v_cl, head of the left stub
    Index right_node = 0;  ///< v_cr, foot of the right stub
    Index left_stub = 0;   ///< (f(e^c), v_cl)
    Index right_stub = 0;  ///< (v_cr, h(e^c))
    bool splits_network = false;  ///< the cut edge was a bridge

    /// Derived index of a base edge other than the cut edge.
    Index derived_edge(Index base_edge) const
    {
        return base_edge < cut_edge ? base_edge : base_edge - 1;
    }

    Index cut_foot() const { return base.foot(cut_edge); }
    Index cut_head() const { return base.head(cut_edge); }

    /// Derived network with load lambda at v_cl, -lambda at v_cr and supply
    /// composition mu on whichever of the two carries the negative load.
    Network with_boundary(double lambda, double mu) const;
};

CutGraph cut(const Network& network, const std::string& cut_edge);
CutGraph cut(const Network& network, Index cut_edge);

}  // namespace h2net
