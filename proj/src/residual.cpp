#include "h2net/residual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "h2net/gas.hpp"

namespace h2net {

Eigen::VectorXd UnknownVector::pack() const
{
    Eigen::VectorXd x(q.size() + eta.size() + p2.size());
    x << q, eta, p2;
    return x;
}

UnknownVector UnknownVector::unpack(const Network& network, const Eigen::VectorXd& x)
{
    const auto m = static_cast<Eigen::Index>(network.edge_count());
    const auto n = static_cast<Eigen::Index>(network.node_count());
    if (x.size() != m + 2 * n) {
        throw DomainError("unknown vector has wrong size");
    }
    return {x.head(m), x.segment(m, n), x.tail(n)};
}

Eigen::VectorXd ResidualVector::pack() const
{
    Eigen::VectorXd r(pressure.size() + mass.size() + mixing.size() + 1);
    r << pressure, mass, mixing, anchor;
    return r;
}

double ResidualVector::max_abs() const
{
    return pack().cwiseAbs().maxCoeff();
}

ResidualVector residual(const Network& network, const UnknownVector& u)
{
    const GasConstants& gas = network.gas();
    const Index m = network.edge_count();
    const Index n = network.node_count();

    ResidualVector r;
    r.pressure.resize(m);
    for (Index e = 0; e < m; ++e) {
        const Index f = network.foot(e), h = network.head(e);
        const double qe = u.q[e];
        r.pressure[e] = u.p2[h] - u.p2[f] -
                        sigma_tilde_affine(u.eta[f], u.eta[h], qe, network.edge(e).pipe(), gas) * qe * std::abs(qe);
    }

    r.mass.resize(n);
    r.mixing.resize(n);
    for (Index v = 0; v < n; ++v) {
        const Node& node = network.node(v);
        const double supply = std::max(-node.load, 0.0);
        double balance = -node.load;
        double inflow = supply;
        double hydrogen = supply > 0.0 ? node.zeta.value_or(0.0) * supply : 0.0;
        for (Index e : network.incident(v)) {
            const double aq = network.incidence(v, e) * u.q[e];
            balance += aq;
            if (aq > 0.0) {
                const double eta_e = u.q[e] >= 0.0 ? u.eta[network.foot(e)] : u.eta[network.head(e)];
                inflow += aq;
                hydrogen += eta_e * aq;
            }
        }
        r.mass[v] = balance;
        r.mixing[v] = u.eta[v] * inflow - hydrogen;
    }

    const Index anchor = network.anchor();
    const double p_star = network.anchor_pressure();
    r.anchor = u.p2[anchor] - p_star * p_star;
    return r;
}

UnknownVector default_init(const Network& network)
{
    const Eigen::MatrixXd a = network.incidence_matrix();
    const Eigen::VectorXd b = network.loads();

    UnknownVector u;
    u.q = a.completeOrthogonalDecomposition().solve(b);

    double supply = 0.0, hydrogen = 0.0;
    for (const auto& node : network.nodes()) {
        if (node.load < 0.0) {
            supply -= node.load;
            hydrogen -= node.zeta.value_or(0.0) * node.load;
        }
    }
    u.eta = Eigen::VectorXd::Constant(network.node_count(), supply > 0.0 ? hydrogen / supply : 0.0);
    const double p_star = network.anchor_pressure();
    u.p2 = Eigen::VectorXd::Constant(network.node_count(), p_star * p_star);
    return u;
}

Eigen::MatrixXd residual_jacobian(const Network& network, const Eigen::VectorXd& x, double fd_step)
{
    const Eigen::VectorXd r0 = residual(network, UnknownVector::unpack(network, x)).pack();
    Eigen::MatrixXd jac(r0.size(), x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = fd_step * std::max(1.0, std::abs(x[i]));
        xp[i] = x[i] + h;
        jac.col(i) = (residual(network, UnknownVector::unpack(network, xp)).pack() - r0) / h;
        xp[i] = x[i];
    }
    return jac;
}

LmResult solve_lm(const Network& network, const UnknownVector& init, const LmOptions& options)
{
    Eigen::VectorXd x = init.pack();
    Eigen::VectorXd r = residual(network, init).pack();
    double cost = r.squaredNorm();
    double nu = options.nu0;
    int iter = 0;

    for (; iter < options.max_iter; ++iter) {
        if (r.cwiseAbs().maxCoeff() < options.tolerance) {
            break;
        }
        const Eigen::MatrixXd jac = residual_jacobian(network, x, options.fd_step);
        const Eigen::VectorXd grad = jac.transpose() * r;
        Eigen::MatrixXd normal = jac.transpose() * jac;
        normal.diagonal().array() += nu;
        const Eigen::VectorXd delta = normal.ldlt().solve(-grad);
        if (!delta.allFinite()) {
            nu *= 2.0;
            continue;
        }

        const Eigen::VectorXd x_new = x + delta;
        const Eigen::VectorXd r_new = residual(network, UnknownVector::unpack(network, x_new)).pack();
        const double cost_new = r_new.squaredNorm();
        if (std::isfinite(cost_new) && cost_new < cost) {
            x = x_new;
            r = r_new;
            cost = cost_new;
            nu *= 0.5;
        } else {
            nu *= 2.0;
        }
        if (delta.norm() < options.step_tolerance) {
            ++iter;
            break;
        }
    }

    const UnknownVector u = UnknownVector::unpack(network, x);
    const double rmax = r.cwiseAbs().maxCoeff();
    if (!(rmax <= options.accept)) {
        std::ostringstream os;
        os << "Levenberg-Marquardt did not converge after " << iter << " iterations (max |r| = " << rmax << ")";
        throw LmConvergenceError(os.str(), rmax, iter, u);
    }

    LmResult out;
    out.iterations = iter;
    out.residual_max = rmax;
    out.solution.q = u.q;
    out.solution.eta_node = u.eta;
    out.solution.p2 = u.p2;
    out.solution.eta_edge = edge_compositions(network, u.q, u.eta);
    for (Index v = 0; v < network.node_count(); ++v) {
        if (!(u.p2[v] > 0.0)) {
            throw InfeasibleError("infeasible: converged squared pressure at node '" + network.node(v).id +
                                  "' is nonpositive");
        }
        if (u.eta[v] < -1e-6 || u.eta[v] > 1.0 + 1e-6) {
            out.solution.warnings.push_back("composition of node '" + network.node(v).id + "' outside [0,1]");
        }
    }
    return out;
}

}  // namespace h2net
