#pragma once

// Full nonlinear residual of the steady mixture model and a damped
// least-squares (Levenberg-Marquardt) solver for networks of any topology.

#include <Eigen/Dense>

#include "h2net/errors.hpp"
#include "h2net/network.hpp"
#include "h2net/solution.hpp"

namespace h2net {

/// Unknowns packed as [q (|E|), eta (|V|), p2 (|V|)].
struct UnknownVector {
    Eigen::VectorXd q;
    Eigen::VectorXd eta;
    Eigen::VectorXd p2;

    Eigen::VectorXd pack() const;
    static UnknownVector unpack(const Network& network, const Eigen::VectorXd& x);
    static UnknownVector from_solution(const Solution& s) { return {s.q, s.eta_node, s.p2}; }
};

/// Residuals packed as [pressure (|E|), mass (|V|), mixing (|V|), anchor].
struct ResidualVector {
    Eigen::VectorXd pressure;  ///< p2_h - p2_f - sigma_tilde * q|q|
    Eigen::VectorXd mass;      ///< A q - b
    Eigen::VectorXd mixing;    ///< eta_v (inflow + b^-) - sum eta_e inflow_e - zeta b^-
    double anchor = 0.0;       ///< p2_{v*} - p*^2

    Eigen::VectorXd pack() const;
    double max_abs() const;
};

ResidualVector residual(const Network& network, const UnknownVector& u);
inline ResidualVector residual(const Network& network, const Solution& s)
{
    return residual(network, UnknownVector::from_solution(s));
}

/// Minimum-norm flows, supply-weighted mean composition, p2 = p*^2 everywhere.
UnknownVector default_init(const Network& network);

struct LmOptions {
    double tolerance = 1e-9;       ///< stop when max |r| falls below this
    double accept = 1e-8;          ///< largest max |r| reported as converged
    double step_tolerance = 1e-12; ///< stop when ||delta|| falls below this
    int max_iter = 500;
    double nu0 = 1e-3;
    double fd_step = 1e-7;         ///< relative forward-difference step
};

struct LmResult {
    Solution solution;
    int iterations = 0;
    double residual_max = 0.0;
};

/// Thrown when LM stops above `accept`; carries the best iterate.
class LmConvergenceError : public ConvergenceError {
public:
    LmConvergenceError(const std::string& what, double best_residual, int iterations, UnknownVector best)
        : ConvergenceError(what, best_residual, iterations), best_iterate(std::move(best)) {}

    UnknownVector best_iterate;
};

/// Forward-difference Jacobian of the packed residual.
Eigen::MatrixXd residual_jacobian(const Network& network, const Eigen::VectorXd& x, double fd_step = 1e-7);

/// Plain Levenberg-Marquardt on the exact nonsmooth residual:
/// (J^T J + nu I) delta = -J^T r, nu halved on success and doubled on failure.
LmResult solve_lm(const Network& network, const UnknownVector& init, const LmOptions& options = {});

}  // namespace h2net
