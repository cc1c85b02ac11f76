#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "h2net/network.hpp"

using namespace h2net;

namespace {

bool has_violation(const std::vector<Violation>& vs, Violation::Kind kind)
{
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

Network two_nodes(bool anchored)
{
    return Network({{"a", -1.0, 0.5, anchored ? std::optional<double>(50.0) : std::nullopt},
                    {"b", 1.0, std::nullopt, std::nullopt}},
                   {{"e", "a", "b", 1.0, 1.0, 0.01}});
}

}  // namespace

TEST_CASE("validate")
{
    CHECK(validate(fixtures::table1_cycle()).empty());
    CHECK(validate(fixtures::diamond()).empty());

    auto nodes = fixtures::table1_cycle().nodes();
    nodes[3].load = 5.0;
    const auto vs = validate(Network(nodes, fixtures::table1_cycle().edges()));
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == Violation::Kind::loads_not_balanced);

    const auto va = validate(two_nodes(false));
    REQUIRE(va.size() == 1);
    CHECK(va[0].kind == Violation::Kind::anchor_count);

    CHECK(has_violation(validate(Network({{"a", -1.0, std::nullopt, 50.0}, {"b", 1.0, std::nullopt, std::nullopt}},
                                         {{"e", "a", "b", 1.0, 1.0, 0.01}})),
                        Violation::Kind::missing_supply_composition));
    CHECK(has_violation(validate(Network({{"a", -1.0, 1.5, 50.0}, {"b", 1.0, 0.2, std::nullopt}},
                                         {{"e", "a", "b", 1.0, 1.0, 0.01}})),
                        Violation::Kind::composition_out_of_range));
    CHECK(has_violation(validate(Network({{"a", -1.0, 0.5, 50.0}, {"b", 1.0, std::nullopt, std::nullopt}},
                                         {{"e", "a", "a", 1.0, 1.0, 0.01}, {"f", "a", "b", -1.0, 1.0, 0.01}})),
                        Violation::Kind::self_loop));
    CHECK(has_violation(validate(Network({{"a", -1.0, 0.5, 50.0}, {"b", 1.0, std::nullopt, std::nullopt}, {"c", 0.0, std::nullopt, std::nullopt}},
                                         {{"e", "a", "b", 1.0, 1.0, 0.01}})),
                        Violation::Kind::disconnected));
    CHECK_THROWS_AS(Network({{"a", 0.0, std::nullopt, 1.0}}, {{"e", "a", "zz", 1.0, 1.0, 0.01}}),
                    InvalidNetworkError);
    CHECK_THROWS_AS(Network({{"a", 0.0, std::nullopt, 1.0}, {"a", 0.0, std::nullopt, std::nullopt}}, {}),
                    InvalidNetworkError);
}

TEST_CASE("incidence")
{
    const Network net = fixtures::table1_cycle();
    CHECK(incidence_entry(net, "v0", "e0") == -1);
    CHECK(incidence_entry(net, "v4", "e0") == 1);
    CHECK(incidence_entry(net, "v2", "e0") == 0);
    CHECK_THROWS_AS(incidence_entry(net, "nope", "e0"), LookupError);
    const Eigen::MatrixXd a = net.incidence_matrix();
    for (Index e = 0; e < net.edge_count(); ++e) {
        CHECK(a.col(e).sum() == 0.0);
        CHECK(a(net.foot(e), e) == -1.0);
        CHECK(a(net.head(e), e) == 1.0);
    }
}

TEST_CASE("flow orientation")
{
    const Network net({{"a", 0.0, std::nullopt, 1.0}, {"b", 0.0, std::nullopt, std::nullopt}},
                      {{"e", "a", "b", 1.0, 1.0, 0.01}});
    const std::vector<double> pos{2.0}, neg{-1.0}, zero{0.0};
    CHECK(flow_oriented(net, pos).arcs[0] == std::pair<Index, Index>{0, 1});
    CHECK(flow_oriented(net, neg).arcs[0] == std::pair<Index, Index>{1, 0});
    CHECK(flow_oriented(net, zero).arcs[0] == std::pair<Index, Index>{0, 1});

    const Network t = fixtures::table1_cycle();
    Eigen::VectorXd q(8);
    q << 1, -2, 0, 3, -1, 0, 2, -4;
    const DiGraph g = flow_oriented(t, q), h = flow_oriented(t, Eigen::VectorXd(-q));
    for (Index e = 0; e < 8; ++e) {
        if (q[e] == 0.0) {
            CHECK(g.arcs[e] == h.arcs[e]);
        } else {
            CHECK(g.arcs[e].first == h.arcs[e].second);
            CHECK(g.arcs[e].second == h.arcs[e].first);
        }
    }
}

TEST_CASE("topological order")
{
    DiGraph chain{{"a", "b", "c"}, {{0, 1}, {1, 2}}};
    CHECK(topological_order(chain) == std::vector<Index>{0, 1, 2});

    DiGraph ties{{"c", "a", "b"}, {}};
    CHECK(topological_order(ties) == std::vector<Index>{1, 2, 0});

    DiGraph two_cycle{{"a", "b"}, {{0, 1}, {1, 0}}};
    CHECK_THROWS_WITH_AS(topological_order(two_cycle), "graph not acyclic", NotAcyclicError);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 9;
        DiGraph g;
        for (int i = 0; i < n; ++i) {
            g.node_ids.push_back("n" + std::to_string(i));
        }
        std::vector<Index> rank(n);
        std::iota(rank.begin(), rank.end(), 0);
        std::shuffle(rank.begin(), rank.end(), rng);
        for (int k = 0; k < 2 * n; ++k) {
            Index u = rng() % n, w = rng() % n;
            if (rank[u] < rank[w]) {
                g.arcs.push_back({u, w});
            }
        }
        const auto order = topological_order(g);
        std::vector<Index> pos(n);
        for (Index i = 0; i < order.size(); ++i) {
            pos[order[i]] = i;
        }
        for (const auto& [u, w] : g.arcs) {
            CHECK(pos[u] < pos[w]);
        }
    }
}

TEST_CASE("cycle basis")
{
    std::mt19937 rng(11);
    CHECK(find_cycles(fixtures::random_tree(7, rng)).empty());

    const Network net = fixtures::table1_cycle();
    const auto cycles = find_cycles(net);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].edges.size() == 7);
    CHECK(std::count(cycles[0].edges.begin(), cycles[0].edges.end(), net.edge_index("e3")) == 1);
    CHECK(std::count(cycles[0].edges.begin(), cycles[0].edges.end(), net.edge_index("e0")) == 0);

    const Network d = fixtures::diamond();
    CHECK(find_cycles(d).size() == 2);
    CHECK(d.cycle_rank() == 2);

    // Consecutive cycle edges share the listed node.
    for (const auto& c : find_cycles(d)) {
        for (Index i = 0; i < c.edges.size(); ++i) {
            const Index a = c.nodes[i], b = c.nodes[(i + 1) % c.nodes.size()];
            const Index e = c.edges[i];
            CHECK(((d.foot(e) == a && d.head(e) == b) || (d.foot(e) == b && d.head(e) == a)));
        }
    }
}

TEST_CASE("cut graph")
{
    const Network net = fixtures::table1_cycle();
    const CutGraph cg = cut(net, "e3");
    CHECK(cg.derived.node_count() == net.node_count() + 2);
    CHECK(cg.derived.edge_count() == net.edge_count() + 1);
    CHECK(cg.derived.is_tree());
    CHECK_FALSE(cg.splits_network);
    const Edge& l = cg.derived.edge(cg.left_stub);
    const Edge& r = cg.derived.edge(cg.right_stub);
    CHECK(l.foot == "v3");
    CHECK(l.head == cg.derived.node(cg.left_node).id);
    CHECK(r.foot == cg.derived.node(cg.right_node).id);
    CHECK(r.head == "v2");
    CHECK(l.length == net.edge(3).length / 2);
    CHECK(r.length == net.edge(3).length / 2);
    CHECK(cg.derived.edge(cg.derived_edge(4)).id == "e4");
    CHECK(cg.derived.edge(cg.derived_edge(2)).id == "e2");

    const Network three({{"a", -1.0, 0.5, 10.0}, {"b", 1.0, std::nullopt, std::nullopt}},
                        {{"e", "a", "b", 3.0, 1.0, 0.01}, {"f", "a", "b", 1.0, 1.0, 0.01}});
    const CutGraph c3 = cut(three, "e");
    CHECK(c3.derived.edge(c3.left_stub).length == 1.5);
    CHECK(c3.derived.edge(c3.right_stub).length == 1.5);

    std::mt19937 rng(3);
    const CutGraph bridge = cut(fixtures::random_tree(5, rng), "e0");
    CHECK(bridge.splits_network);
    CHECK_FALSE(bridge.derived.is_connected());
    CHECK_THROWS_AS(cut(net, "nope"), LookupError);

    const Network b = cg.with_boundary(-1.5, 0.3);
    CHECK(b.node(cg.left_node).load == -1.5);
    CHECK(b.node(cg.left_node).zeta == 0.3);
    CHECK(b.node(cg.right_node).load == 1.5);
    CHECK_FALSE(b.node(cg.right_node).zeta);
    const Network c = cg.with_boundary(2.0, 0.3);
    CHECK(c.node(cg.right_node).zeta == 0.3);
    CHECK_FALSE(c.node(cg.left_node).zeta);
}

TEST_CASE("load sum is exact for valid networks")
{
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        const Network n = fixtures::random_single_cycle(3 + i % 8, rng);
        CHECK(validate(n).empty());
        CHECK(n.loads().sum() == 0.0);
    }
}
