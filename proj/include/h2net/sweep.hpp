#pragma once

// Grid evaluation of the cut gap functions, root curves of H_eta, the
// restricted function g and composition slices. Works for cut graphs of any
// cycle count.

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "h2net/cut_solver.hpp"
#include "h2net/network.hpp"
#include "h2net/residual.hpp"

namespace h2net {

enum class PointStatus { ok, degenerate, scan_fallback, failed };
std::string to_string(PointStatus status);

/// How the derived network is solved at each (lambda, mu).
enum class InnerSolver {
    automatic,  ///< tree solver, cut solver for one remaining cycle, LM beyond
    lm,         ///< always LM from default_init
};

struct SweepOptions {
    InnerSolver inner = InnerSolver::automatic;
    CutOptions cut;
    LmOptions lm;
    unsigned threads = 0;  ///< 0 selects std::thread::hardware_concurrency()
};

enum class RangeRule {
    total_supply,  ///< +-sum of supplies
    load_sum,      ///< +-sum |b_v|
};

/// Default lambda interval: [gamma_min, gamma_max] when the cut graph is a
/// tree, otherwise symmetric around zero with the given rule.
std::pair<double, double> default_lambda_range(const Network& network, const std::string& cut_edge,
                                               RangeRule rule = RangeRule::total_supply);

/// n >= 2 uniformly spaced points including both ends.
std::vector<double> linspace(double lo, double hi, int n);

/// H_p and H_eta from solving the derived network at (lambda, mu).
HValues evaluate_cut(const CutGraph& cg, double lambda, double mu, const SweepOptions& options = {});

struct SweepGrid {
    std::vector<double> lambda;
    std::vector<double> mu;
    Eigen::MatrixXd hp;    ///< rows lambda, columns mu; NaN where failed
    Eigen::MatrixXd heta;
    std::vector<PointStatus> status;  ///< row-major

    PointStatus at(Index i, Index j) const { return status[i * mu.size() + j]; }
    Index converged() const;
};

/// Throws DomainError for grids smaller than 2 x 2.
SweepGrid sweep(const Network& network, const std::string& cut_edge, double lambda_lo, double lambda_hi,
                int n_lambda, int n_mu, const SweepOptions& options = {});

enum class RootMethod { analytic_tree_cut, scalar_rootfind };
std::string to_string(RootMethod method);

struct RootCurve {
    std::vector<double> lambda;
    std::vector<double> mu;  ///< NaN where failed
    std::vector<PointStatus> status;
    RootMethod method = RootMethod::analytic_tree_cut;
};

/// Tree-shaped cut graphs use root_curve_mu inside [gamma_min, gamma_max];
/// everything else bisects mu -> H_eta(lambda, mu) on [0,1], falling back to a
/// dense scan when there is no sign change.
RootCurve root_curve(const Network& network, const std::string& cut_edge, const std::vector<double>& lambda,
                     const SweepOptions& options = {});

struct GCurve {
    std::vector<double> lambda;
    std::vector<double> g;  ///< NaN where failed
    std::vector<PointStatus> status;
};

GCurve restricted_g(const Network& network, const std::string& cut_edge, const std::vector<double>& lambda,
                    const SweepOptions& options = {});

/// Composition at one node of the derived network over a (lambda, mu) grid;
/// rows lambda, columns mu, NaN where the solve failed.
Eigen::MatrixXd composition_slice(const Network& network, const std::string& cut_edge, const std::string& node,
                                  const std::vector<double>& lambda, const std::vector<double>& mu,
                                  const SweepOptions& options = {});

void write_grid_csv(std::ostream& os, const SweepGrid& grid);
void write_grid_json(std::ostream& os, const SweepGrid& grid);
void write_root_curve_csv(std::ostream& os, const RootCurve& curve);
void write_g_csv(std::ostream& os, const GCurve& curve);

}  // namespace h2net
