#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "h2net/sweep.hpp"

using namespace h2net;

TEST_CASE("grid helpers")
{
    const auto g = linspace(-6, 2, 5);
    CHECK(g == std::vector<double>{-6, -4, -2, 0, 2});
    CHECK(linspace(1.5, 1.5, 10).size() == 1);
    CHECK_THROWS_AS(linspace(0, 1, 1), DomainError);

    const Network net = fixtures::table1_cycle();
    CHECK(default_lambda_range(net, "e3") == std::pair<double, double>{-6.0, 2.0});
    CHECK(default_lambda_range(fixtures::diamond(), "e8") == std::pair<double, double>{-8.0, 8.0});
    CHECK(default_lambda_range(fixtures::diamond(), "e8", RangeRule::load_sum) ==
          std::pair<double, double>{-16.0, 16.0});
}

TEST_CASE("degenerate 2 x 2 sweep and output formats")
{
    const Network net = fixtures::table1_cycle();
    const SweepGrid grid = sweep(net, "e3", -6, 2, 2, 2);
    CHECK(grid.lambda.size() == 2);
    CHECK(grid.mu.size() == 2);
    CHECK(grid.converged() == 4);
    CHECK_THROWS_AS(sweep(net, "e3", -6, 2, 1, 2), DomainError);

    std::ostringstream csv, json;
    write_grid_csv(csv, grid);
    write_grid_json(json, grid);
    const std::string text = csv.str();
    CHECK(text.rfind("lambda,mu,Hp,Heta,status\n-6,0,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    CHECK(json.str().find("\"format_version\": 1") != std::string::npos);
}

TEST_CASE("single-cycle sweep: jumps, brackets, affinity")
{
    const Network net = fixtures::table1_cycle();
    const SweepGrid grid = sweep(net, "e3", -6, 2, 50, 51);
    CHECK(grid.converged() == grid.status.size());
    for (Index j = 0; j < grid.mu.size(); ++j) {
        CHECK(grid.hp(0, j) <= 1e-10);
        CHECK(grid.hp(49, j) >= -1e-10);
    }
    // Across lambda = 0 (between samples 36 and 37) H_eta jumps for every mu.
    CHECK(grid.lambda[36] < 0.0);
    CHECK(grid.lambda[37] > 0.0);
    for (Index j = 0; j < grid.mu.size(); ++j) {
        const double jump = std::abs(grid.heta(37, j) - grid.heta(36, j));
        const double step = std::abs(grid.heta(36, j) - grid.heta(35, j));
        CHECK(jump > 10 * step);
    }
    for (Index i = 0; i < grid.lambda.size(); ++i) {
        CHECK(std::abs(grid.heta(i, 25) - 0.5 * (grid.heta(i, 0) + grid.heta(i, 50))) < 1e-10);
    }
}

TEST_CASE("root curve: analytic and scalar methods agree with the closed form")
{
    const Network net = fixtures::table1_cycle();
    std::vector<double> lambda;
    for (double l : linspace(-6, 2, 41)) {
        if (std::abs(l) > 1e-3) {
            lambda.push_back(l);
        }
    }
    const RootCurve analytic = root_curve(net, "e3", lambda);
    CHECK(analytic.method == RootMethod::analytic_tree_cut);
    for (Index i = 0; i < lambda.size(); ++i) {
        CHECK(std::abs(analytic.mu[i] - fixtures::table1_root_curve(lambda[i])) < 1e-10);
    }

    // Forcing LM on the cut graph goes through per-lambda bisection in mu.
    SweepOptions lm;
    lm.inner = InnerSolver::lm;
    const CutGraph cg = cut(net, "e3");
    for (double l : {-4.5, -1.0, 1.0}) {
        const double mu = fixtures::table1_root_curve(l);
        CHECK(std::abs(evaluate_cut(cg, l, mu, lm).heta) < 1e-8);
    }
}

TEST_CASE("root curve outside the bracket falls back to scalar root finding")
{
    const Network net = fixtures::table1_cycle();
    const RootCurve rc = root_curve(net, "e3", {-7.0, 3.0});
    CHECK(rc.method == RootMethod::scalar_rootfind);
    const CutGraph cg = cut(net, "e3");
    for (Index i = 0; i < 2; ++i) {
        if (rc.status[i] == PointStatus::ok) {
            CHECK(std::abs(evaluate_cut(cg, rc.lambda[i], rc.mu[i]).heta) < 1e-8);
        }
    }
}

TEST_CASE("degenerate lambda = 0 sample of a multi-cycle cut")
{
    const RootCurve rc = root_curve(fixtures::diamond(), "e8", {0.0});
    CHECK(rc.method == RootMethod::scalar_rootfind);
    CHECK(rc.status[0] == PointStatus::degenerate);
}

TEST_CASE("degenerate bracket gives a single g sample")
{
    // The cycle a-b-a carries no supply on one side: gamma_min = gamma_max.
    const Network net({{"a", -2, 0.5, 60.0}, {"b", 0, std::nullopt, std::nullopt}, {"c", 2, std::nullopt, std::nullopt}},
                      {{"x", "b", "c", 1e-4, 1, 0.01}, {"y", "c", "b", 1e-4, 1, 0.01}, {"z", "a", "c", 1e-4, 1, 0.01}});
    const auto range = default_lambda_range(net, "x");
    CHECK(range.first == range.second);
    const GCurve g = restricted_g(net, "x", linspace(range.first, range.second, 50));
    CHECK(g.lambda.size() == 1);
    CHECK(std::isfinite(g.g[0]));
}

TEST_CASE("composition slices")
{
    const Network net = fixtures::table1_cycle();
    const std::vector<double> mu = {0.0, 0.5, 1.0};
    const Eigen::MatrixXd s = composition_slice(net, "e3", "v5", {-5.0, -1.0, 1.0}, mu);
    for (Index i = 0; i < 3; ++i) {
        CHECK(std::abs(s(i, 1) - 0.5 * (s(i, 0) + s(i, 2))) < 1e-10);
    }
    // v0 is upstream of everything: constant in mu.
    const Eigen::MatrixXd up = composition_slice(net, "e3", "v0", {-5.0, 1.0}, mu);
    CHECK((up.array() - 0.75).abs().maxCoeff() == 0.0);
}
