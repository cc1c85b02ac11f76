#include "h2net/cut_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "h2net/tree_solver.hpp"

namespace h2net {

namespace {

constexpr Index none = static_cast<Index>(-1);

void require_tree_cut(const CutGraph& cg)
{
    if (cg.splits_network) {
        throw InvalidNetworkError("cut edge '" + cg.base.edge(cg.cut_edge).id + "' does not lie on a cycle");
    }
    if (!cg.derived.is_tree()) {
        throw InvalidNetworkError("cut graph is not tree-shaped; the network must have exactly one cycle");
    }
}

bool contains_quoted(const std::string& text, const std::string& id)
{
    return text.find("'" + id + "'") != std::string::npos;
}

}  // namespace

GammaBounds gamma_constants(const CutGraph& cg)
{
    require_tree_cut(cg);
    const Network& d = cg.derived;
    const Eigen::VectorXd q0 = solve_flows(cg.with_boundary(0.0, 0.0));

    // BFS parents rooted at v_cl, then walk up from v_cr.
    std::vector<Index> parent(d.node_count(), none), parent_edge(d.node_count(), none);
    std::deque<Index> queue{cg.left_node};
    parent[cg.left_node] = cg.left_node;
    while (!queue.empty()) {
        const Index v = queue.front();
        queue.pop_front();
        for (Index e : d.incident(v)) {
            const Index w = d.foot(e) == v ? d.head(e) : d.foot(e);
            if (parent[w] == none) {
                parent[w] = v;
                parent_edge[w] = e;
                queue.push_back(w);
            }
        }
    }

    GammaBounds out;
    for (Index v = cg.right_node; v != cg.left_node; v = parent[v]) {
        const Index e = parent_edge[v];
        out.path_edges.push_back(e);
        out.path_tails.push_back(v);
        out.gamma.push_back(d.incidence(v, e) * q0[e]);
    }
    const auto [lo, hi] = std::minmax_element(out.gamma.begin(), out.gamma.end());
    out.gamma_min = *lo;
    out.gamma_max = *hi;
    return out;
}

HValues gaps(const CutGraph& cg, Solution derived_solution)
{
    HValues h;
    h.hp = derived_solution.p2[cg.right_node] - derived_solution.p2[cg.left_node];
    h.heta = derived_solution.eta_node[cg.right_node] - derived_solution.eta_node[cg.left_node];
    h.solution = std::move(derived_solution);
    return h;
}

HValues eval_H(const CutGraph& cg, const CutBoundary& b)
{
    if (!(b.mu >= 0.0 && b.mu <= 1.0)) {
        throw DomainError("mu must lie in [0,1]");
    }
    return gaps(cg, solve_tree(cg.with_boundary(b.lambda, b.mu)));
}

double root_curve_mu(const CutGraph& cg, double lambda)
{
    return root_curve_mu(cg, gamma_constants(cg), lambda);
}

double root_curve_mu(const CutGraph& cg, const GammaBounds& bounds, double lambda)
{
    const double slack = 1e-12 * std::max(1.0, bounds.gamma_max - bounds.gamma_min);
    if (!(lambda >= bounds.gamma_min - slack && lambda <= bounds.gamma_max + slack)) {
        std::ostringstream os;
        os << "lambda = " << lambda << " outside [" << bounds.gamma_min << ", " << bounds.gamma_max << "]";
        throw OutOfBracketError(os.str());
    }
    const Index source = lambda >= 0.0 ? cg.cut_foot() : cg.cut_head();
    const Network probe_half = cg.with_boundary(lambda, 0.5);
    const Network probe_zero = cg.with_boundary(lambda, 0.0);
    const Eigen::VectorXd q = solve_flows(probe_half);
    const double a = solve_compositions(probe_half, q).eta[source];
    const double b = solve_compositions(probe_zero, q).eta[source];
    if (std::abs(a - b) >= 1e-12) {
        throw Error("demand-side cut composition depends on mu; root curve undefined at this lambda");
    }
    return std::clamp(a, 0.0, 1.0);
}

double restricted_g(const CutGraph& cg, const GammaBounds& bounds, double lambda)
{
    return eval_H(cg, {lambda, root_curve_mu(cg, bounds, lambda)}).hp;
}

Index default_cut_edge(const Network& network)
{
    const auto cycles = find_cycles(network);
    if (cycles.empty()) {
        throw InvalidNetworkError("network has no cycle to cut");
    }
    return *std::min_element(cycles.front().edges.begin(), cycles.front().edges.end());
}

Solution reassemble(const CutGraph& cg, const Solution& ds, double lambda)
{
    const Network& base = cg.base;
    Solution s;
    s.q.resize(base.edge_count());
    for (Index e = 0; e < base.edge_count(); ++e) {
        s.q[e] = e == cg.cut_edge ? lambda : ds.q[cg.derived_edge(e)];
    }
    s.eta_node = ds.eta_node.head(base.node_count());
    s.p2 = ds.p2.head(base.node_count());
    s.eta_edge = edge_compositions(base, s.q, s.eta_node);
    const std::string& left = cg.derived.node(cg.left_node).id;
    const std::string& right = cg.derived.node(cg.right_node).id;
    for (const auto& w : ds.warnings) {
        if (!contains_quoted(w, left) && !contains_quoted(w, right)) {
            s.warnings.push_back(w);
        }
    }
    return s;
}

CutResult solve_single_cycle(const Network& network, const CutOptions& options)
{
    if (network.cycle_rank() != 1 || !network.is_connected()) {
        throw InvalidNetworkError("cut solver requires a connected network with exactly one cycle (found " +
                                  std::to_string(network.cycle_rank()) + ")");
    }
    const Index ce = options.cut_edge ? network.edge_index(*options.cut_edge) : default_cut_edge(network);
    const CutGraph cg = cut(network, ce);

    CutResult result;
    result.cut_edge = network.edge(ce).id;
    result.bounds = gamma_constants(cg);
    const GammaBounds& gb = result.bounds;
    const double tol = options.tol_p;

    auto g = [&](double lambda) { return restricted_g(cg, gb, lambda); };
    auto finish = [&](double lambda, double g_value, int iterations) {
        const double mu = root_curve_mu(cg, gb, lambda);
        const HValues h = eval_H(cg, {lambda, mu});
        result.lambda_star = lambda;
        result.mu_star = mu;
        result.g_star = g_value;
        result.iterations = iterations;
        result.solution = reassemble(cg, h.solution, lambda);
        return result;
    };

    double a = gb.gamma_min, b = gb.gamma_max;
    double ga = g(a), gb_val = g(b);
    if (std::abs(ga) <= tol) {
        return finish(a, ga, 0);
    }
    if (std::abs(gb_val) <= tol) {
        return finish(b, gb_val, 0);
    }
    // A bracket end at lambda = 0 is replaced by a point slightly inside.
    const double eps = 1e-8 * std::max(1.0, b - a);
    if (a == 0.0 && b > eps) {
        a = eps;
        ga = g(a);
    }
    if (b == 0.0 && a < -eps) {
        b = -eps;
        gb_val = g(b);
    }
    if (std::signbit(ga) == std::signbit(gb_val)) {
        std::ostringstream os;
        os << "infeasible: g has no sign change on [" << a << ", " << b << "] (g = " << ga << ", " << gb_val
           << ")";
        throw InfeasibleError(os.str());
    }

    for (int it = 1; it <= options.max_iter; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) {
            break;
        }
        const double gm = g(m);
        if (std::abs(gm) <= tol) {
            return finish(m, gm, it);
        }
        if (std::signbit(gm) == std::signbit(ga)) {
            a = m;
            ga = gm;
        } else {
            b = m;
            gb_val = gm;
        }
    }
    const double best = std::min(std::abs(ga), std::abs(gb_val));
    std::ostringstream os;
    os.precision(17);
    os << "bisection did not reach |g| <= " << tol << "; bracket [" << a << ", " << b << "], g = [" << ga << ", "
       << gb_val << "]";
    throw ConvergenceError(os.str(), best, options.max_iter);
}

}  // namespace h2net
