#include "h2net/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <thread>

#include <json.hpp>

#include "h2net/tree_solver.hpp"

namespace h2net {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

void parallel_for(Index n, unsigned threads, const std::function<void(Index)>& body)
{
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<Index>(threads, n));
    if (threads <= 1) {
        for (Index i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (Index i = t; i < n; i += threads) {
                body(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

std::string number(double x)
{
    if (std::isnan(x)) {
        return "NaN";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct MuRoot {
    double mu = nan_value;
    PointStatus status = PointStatus::failed;
};

MuRoot scalar_mu_root(const CutGraph& cg, double lambda, const SweepOptions& options)
{
    constexpr double root_tol = 1e-12;
    auto h = [&](double mu) { return evaluate_cut(cg, lambda, mu, options).heta; };
    try {
        const double h0 = h(0.0), h1 = h(1.0);
        if (std::abs(h0) <= root_tol && std::abs(h1) <= root_tol) {
            return {0.5, PointStatus::degenerate};
        }
        if (std::abs(h0) <= root_tol) {
            return {0.0, PointStatus::ok};
        }
        if (std::abs(h1) <= root_tol) {
            return {1.0, PointStatus::ok};
        }
        if (std::signbit(h0) != std::signbit(h1)) {
            double a = 0.0, b = 1.0, ha = h0;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double hm = h(m);
                if (std::abs(hm) <= root_tol || b - a < 1e-15) {
                    return {m, PointStatus::ok};
                }
                if (std::signbit(hm) == std::signbit(ha)) {
                    a = m;
                    ha = hm;
                } else {
                    b = m;
                }
            }
            return {0.5 * (a + b), PointStatus::ok};
        }
        MuRoot best;
        double best_abs = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 100; ++k) {
            const double mu = k / 100.0;
            const double v = std::abs(h(mu));
            if (v < best_abs) {
                best_abs = v;
                best.mu = mu;
            }
        }
        if (best_abs <= 1e-6) {
            best.status = PointStatus::scan_fallback;
            return best;
        }
    } catch (const Error&) {
    }
    return {};
}

}  // namespace

std::string to_string(PointStatus status)
{
    switch (status) {
    case PointStatus::ok:
        return "ok";
    case PointStatus::degenerate:
        return "degenerate";
    case PointStatus::scan_fallback:
        return "scan_fallback";
    case PointStatus::failed:
        return "failed";
    }
    return "failed";
}

std::string to_string(RootMethod method)
{
    return method == RootMethod::analytic_tree_cut ? "analytic-tree-cut" : "scalar-rootfind";
}

std::pair<double, double> default_lambda_range(const Network& network, const std::string& cut_edge,
                                               RangeRule rule)
{
    const CutGraph cg = cut(network, cut_edge);
    if (!cg.splits_network && cg.derived.is_tree()) {
        const GammaBounds gb = gamma_constants(cg);
        return {gb.gamma_min, gb.gamma_max};
    }
    double bound = 0.0;
    for (const auto& node : network.nodes()) {
        if (rule == RangeRule::load_sum) {
            bound += std::abs(node.load);
        } else if (node.load < 0.0) {
            bound -= node.load;
        }
    }
    return {-bound, bound};
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (lo == hi) {
        return {lo};
    }
    if (n < 2) {
        throw DomainError("a grid needs at least 2 points");
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    }
    return out;
}

HValues evaluate_cut(const CutGraph& cg, double lambda, double mu, const SweepOptions& options)
{
    const Network net = cg.with_boundary(lambda, mu);
    if (options.inner == InnerSolver::lm) {
        return gaps(cg, solve_lm(net, default_init(net), options.lm).solution);
    }
    switch (net.cycle_rank()) {
    case 0:
        return gaps(cg, solve_tree(net));
    case 1: {
        CutOptions inner = options.cut;
        inner.cut_edge.reset();
        return gaps(cg, solve_single_cycle(net, inner).solution);
    }
    default:
        return gaps(cg, solve_lm(net, default_init(net), options.lm).solution);
    }
}

Index SweepGrid::converged() const
{
    return static_cast<Index>(std::count(status.begin(), status.end(), PointStatus::ok));
}

SweepGrid sweep(const Network& network, const std::string& cut_edge, double lambda_lo, double lambda_hi,
                int n_lambda, int n_mu, const SweepOptions& options)
{
    if (n_lambda < 2 || n_mu < 2) {
        throw DomainError("sweep grid needs at least 2 points per axis");
    }
    const CutGraph cg = cut(network, cut_edge);
    SweepGrid grid;
    grid.lambda = linspace(lambda_lo, lambda_hi, n_lambda);
    if (grid.lambda.size() < 2) {
        throw DomainError("sweep needs a nonempty lambda range");
    }
    grid.mu = linspace(0.0, 1.0, n_mu);
    grid.hp = Eigen::MatrixXd::Constant(n_lambda, n_mu, nan_value);
    grid.heta = Eigen::MatrixXd::Constant(n_lambda, n_mu, nan_value);
    grid.status.assign(static_cast<Index>(n_lambda) * n_mu, PointStatus::failed);

    parallel_for(n_lambda, options.threads, [&](Index i) {
        for (Index j = 0; j < static_cast<Index>(n_mu); ++j) {
            try {
                const HValues h = evaluate_cut(cg, grid.lambda[i], grid.mu[j], options);
                grid.hp(i, j) = h.hp;
                grid.heta(i, j) = h.heta;
                grid.status[i * n_mu + j] = PointStatus::ok;
            } catch (const Error&) {
            }
        }
    });
    return grid;
}

RootCurve root_curve(const Network& network, const std::string& cut_edge, const std::vector<double>& lambda,
                     const SweepOptions& options)
{
    const CutGraph cg = cut(network, cut_edge);
    RootCurve curve;
    curve.lambda = lambda;
    curve.mu.assign(lambda.size(), nan_value);
    curve.status.assign(lambda.size(), PointStatus::failed);

    std::optional<GammaBounds> bounds;
    if (!cg.splits_network && cg.derived.is_tree()) {
        bounds = gamma_constants(cg);
    }
    curve.method = bounds ? RootMethod::analytic_tree_cut : RootMethod::scalar_rootfind;

    parallel_for(lambda.size(), options.threads, [&](Index i) {
        if (bounds) {
            try {
                curve.mu[i] = root_curve_mu(cg, *bounds, lambda[i]);
                curve.status[i] = PointStatus::ok;
                return;
            } catch (const Error&) {
            }
        }
        const MuRoot r = scalar_mu_root(cg, lambda[i], options);
        curve.mu[i] = r.mu;
        curve.status[i] = r.status;
    });
    if (bounds && std::any_of(lambda.begin(), lambda.end(), [&](double l) {
            return l < bounds->gamma_min || l > bounds->gamma_max;
        })) {
        curve.method = RootMethod::scalar_rootfind;
    }
    return curve;
}

GCurve restricted_g(const Network& network, const std::string& cut_edge, const std::vector<double>& lambda,
                    const SweepOptions& options)
{
    const CutGraph cg = cut(network, cut_edge);
    const RootCurve rc = root_curve(network, cut_edge, lambda, options);
    GCurve out;
    out.lambda = lambda;
    out.g.assign(lambda.size(), nan_value);
    out.status = rc.status;
    parallel_for(lambda.size(), options.threads, [&](Index i) {
        if (rc.status[i] == PointStatus::failed) {
            return;
        }
        try {
            out.g[i] = evaluate_cut(cg, lambda[i], rc.mu[i], options).hp;
        } catch (const Error&) {
            out.status[i] = PointStatus::failed;
        }
    });
    return out;
}

Eigen::MatrixXd composition_slice(const Network& network, const std::string& cut_edge, const std::string& node,
                                  const std::vector<double>& lambda, const std::vector<double>& mu,
                                  const SweepOptions& options)
{
    const CutGraph cg = cut(network, cut_edge);
    const Index v = cg.derived.node_index(node);
    Eigen::MatrixXd out = Eigen::MatrixXd::Constant(lambda.size(), mu.size(), nan_value);
    parallel_for(lambda.size(), options.threads, [&](Index i) {
        for (Index j = 0; j < mu.size(); ++j) {
            try {
                out(i, j) = evaluate_cut(cg, lambda[i], mu[j], options).solution.eta_node[v];
            } catch (const Error&) {
            }
        }
    });
    return out;
}

void write_grid_csv(std::ostream& os, const SweepGrid& grid)
{
    os << "lambda,mu,Hp,Heta,status\n";
    for (Index i = 0; i < grid.lambda.size(); ++i) {
        for (Index j = 0; j < grid.mu.size(); ++j) {
            os << number(grid.lambda[i]) << ',' << number(grid.mu[j]) << ',' << number(grid.hp(i, j)) << ','
               << number(grid.heta(i, j)) << ',' << to_string(grid.at(i, j)) << '\n';
        }
    }
}

void write_grid_json(std::ostream& os, const SweepGrid& grid)
{
    auto row_major = [&](const Eigen::MatrixXd& m) {
        nlohmann::json a = nlohmann::json::array();
        for (Index i = 0; i < static_cast<Index>(m.rows()); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Index j = 0; j < static_cast<Index>(m.cols()); ++j) {
                row.push_back(std::isnan(m(i, j)) ? nlohmann::json(nullptr) : nlohmann::json(m(i, j)));
            }
            a.push_back(std::move(row));
        }
        return a;
    };
    nlohmann::json status = nlohmann::json::array();
    for (Index i = 0; i < grid.lambda.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < grid.mu.size(); ++j) {
            row.push_back(to_string(grid.at(i, j)));
        }
        status.push_back(std::move(row));
    }
    const nlohmann::json j = {
        {"format_version", 1}, {"lambda", grid.lambda},      {"mu", grid.mu},
        {"Hp", row_major(grid.hp)}, {"Heta", row_major(grid.heta)}, {"status", status},
    };
    os << j.dump(2) << '\n';
}

void write_root_curve_csv(std::ostream& os, const RootCurve& curve)
{
    os << "lambda,mu\n";
    for (Index i = 0; i < curve.lambda.size(); ++i) {
        os << number(curve.lambda[i]) << ',' << number(curve.mu[i]) << '\n';
    }
}

void write_g_csv(std::ostream& os, const GCurve& curve)
{
    os << "lambda,g\n";
    for (Index i = 0; i < curve.lambda.size(); ++i) {
        os << number(curve.lambda[i]) << ',' << number(curve.g[i]) << '\n';
    }
}

}  // namespace h2net
