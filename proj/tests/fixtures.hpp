#pragma once

// Networks and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "h2net/network.hpp"

namespace fixtures {

using h2net::Edge;
using h2net::Network;
using h2net::Node;

inline std::string vid(int i) { return "v" + std::to_string(i); }
inline std::string eid(int i) { return "e" + std::to_string(i); }

/// Single-cycle sample network. Supplies are negative loads here, so the
/// table's supplies 4, 4 become -4, -4 and its demands -2, -6 become 2, 6.
inline Network table1_cycle(bool diamond = false)
{
    std::vector<Node> nodes = {
        {"v0", -4.0, 0.75, 60.0}, {"v1", -4.0, 0.25, std::nullopt}, {"v2", 2.0, std::nullopt, std::nullopt},
        {"v3", 6.0, std::nullopt, std::nullopt},
    };
    for (int i = 4; i < 8; ++i) {
        nodes.push_back({vid(i), 0.0, std::nullopt, std::nullopt});
    }
    const std::vector<std::pair<std::string, std::string>> ends = {
        {"v0", "v4"}, {"v4", "v5"}, {"v5", "v3"}, {"v3", "v2"}, {"v1", "v6"},
        {"v6", "v2"}, {"v1", "v7"}, {"v7", "v4"}, {"v7", "v5"},
    };
    const double length[] = {4e-4, 6e-4, 1e-4, 1e-4, 8e-4, 1e-4, 1e-4, 8e-4, 8e-4};
    std::vector<Edge> edges;
    for (int i = 0; i < (diamond ? 9 : 8); ++i) {
        edges.push_back({eid(i), ends[i].first, ends[i].second, length[i], 1.0, 0.01});
    }
    return Network(nodes, edges);
}

inline Network diamond() { return table1_cycle(true); }

/// Root curve written out for the sample network, with the table's own signs
/// (supplies positive): b0 = 4, b1 = 4, b2 = -2, b3 = -6.
inline double table1_root_curve(double lambda)
{
    const double z0 = 0.75, z1 = 0.25, b0 = 4, b1 = 4, b2 = -2, b3 = -6;
    if (lambda <= b0 + b3) {
        return (z0 * (b1 + b2 + lambda) - z1 * b1) / (b2 + lambda);
    }
    if (lambda <= 0.0) {
        return z1;
    }
    return (z0 * b0 - z1 * (b0 + b3 - lambda)) / (lambda - b3);
}

/// Random balanced integer loads with at least one supply; supplies get a
/// random composition.
inline std::vector<Node> random_nodes(int n, std::mt19937& rng)
{
    std::uniform_int_distribution<int> load(-5, 5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<int> b(n);
    do {
        int sum = 0;
        for (int i = 0; i + 1 < n; ++i) {
            b[i] = load(rng);
            sum += b[i];
        }
        b[n - 1] = -sum;
    } while (std::none_of(b.begin(), b.end(), [](int x) { return x < 0; }));

    std::vector<Node> nodes;
    for (int i = 0; i < n; ++i) {
        Node node{vid(i), static_cast<double>(b[i]), std::nullopt, std::nullopt};
        if (b[i] < 0) {
            node.zeta = unit(rng);
        }
        nodes.push_back(node);
    }
    nodes[0].pressure_anchor = 60.0;
    return nodes;
}

inline Edge random_edge(int k, int a, int b, std::mt19937& rng)
{
    std::uniform_real_distribution<double> len(0.5e-4, 1.5e-4);
    if (std::bernoulli_distribution(0.5)(rng)) {
        std::swap(a, b);
    }
    return {eid(k), vid(a), vid(b), len(rng), 1.0, 0.01};
}

inline Network random_tree(int n, std::mt19937& rng)
{
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        edges.push_back(random_edge(v - 1, std::uniform_int_distribution<int>(0, v - 1)(rng), v, rng));
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    return Network(random_nodes(n, rng), edges);
}

/// Random tree plus one extra edge between distinct nodes.
inline Network random_single_cycle(int n, std::mt19937& rng)
{
    const Network tree = random_tree(n, rng);
    auto edges = tree.edges();
    std::uniform_int_distribution<int> pick(0, n - 1);
    int a = pick(rng), b = pick(rng);
    while (a == b) {
        b = pick(rng);
    }
    edges.push_back(random_edge(n - 1, a, b, rng));
    return Network(tree.nodes(), edges);
}

/// Dense least-squares oracle for A q = b.
inline Eigen::VectorXd dense_flows(const Network& net)
{
    return net.incidence_matrix().colPivHouseholderQr().solve(net.loads());
}

}  // namespace fixtures
