#pragma once

// Constructive solver for networks with exactly one cycle. One cycle edge is
// cut, the resulting tree is solved for boundary data (lambda, mu) at the two
// new nodes, and lambda is chosen so that both cut nodes end up with the same
// squared pressure and composition.

#include <optional>
#include <string>
#include <vector>

#include "h2net/network.hpp"
#include "h2net/solution.hpp"

namespace h2net {

/// Flow through the cut and supply composition at whichever cut node supplies.
struct CutBoundary {
    double lambda = 0.0;
    double mu = 0.0;
};

/// Path from v_cr to v_cl through the cut tree. Along path edge k the
/// flow satisfies a(v_k, e_k) q_k(lambda) = gamma[k] - lambda, where v_k is the
/// endpoint nearer to v_cr.
struct GammaBounds {
    std::vector<Index> path_edges;  ///< derived edge indices, from v_cr to v_cl
    std::vector<Index> path_tails;  ///< v_k for each path edge
    std::vector<double> gamma;
    double gamma_min = 0.0;
    double gamma_max = 0.0;
};

/// Throws InvalidNetworkError unless the cut graph is a tree whose cut edge lay
/// on the cycle.
GammaBounds gamma_constants(const CutGraph& cg);

struct HValues {
    double hp = 0.0;    ///< p2(v_cr) - p2(v_cl)
    double heta = 0.0;  ///< eta(v_cr) - eta(v_cl)
    Solution solution;  ///< solution on the derived network
};

/// Gap functions on a tree-shaped cut graph.
HValues eval_H(const CutGraph& cg, const CutBoundary& b);

/// Gap functions from an already computed derived solution.
HValues gaps(const CutGraph& cg, Solution derived_solution);

/// Composition of the demand-side cut node, which is independent of mu for
/// lambda in [gamma_min, gamma_max]. For lambda >= 0 it is the composition at
/// f(e^c), for lambda < 0 the one at h(e^c); this also fixes lambda = 0.
/// Throws OutOfBracketError outside the bracket.
double root_curve_mu(const CutGraph& cg, double lambda);
double root_curve_mu(const CutGraph& cg, const GammaBounds& bounds, double lambda);

/// g(lambda) = H_p(lambda, mu_eta(lambda)).
double restricted_g(const CutGraph& cg, const GammaBounds& bounds, double lambda);

struct CutOptions {
    std::optional<std::string> cut_edge;  ///< defaults to the first cycle edge in input order
    double tol_p = 1e-10;
    int max_iter = 200;
};

struct CutResult {
    Solution solution;  ///< on the original network
    double lambda_star = 0.0;
    double mu_star = 0.0;
    std::string cut_edge;
    int iterations = 0;
    double g_star = 0.0;
    GammaBounds bounds;
};

/// Edge cut by default: the cycle edge with the smallest input index.
Index default_cut_edge(const Network& network);

/// Bisection for the root of g on [gamma_min, gamma_max], then reassembly on
/// the original network. Throws InvalidNetworkError unless the network has
/// exactly one cycle containing the cut edge, InfeasibleError when g has no
/// sign change and ConvergenceError when bisection stalls.
CutResult solve_single_cycle(const Network& network, const CutOptions& options = {});

/// Maps a derived-network solution at (lambda, mu) back to the base network.
Solution reassemble(const CutGraph& cg, const Solution& derived_solution, double lambda);

}  // namespace h2net
