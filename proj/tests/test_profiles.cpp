#include "oracles.hpp"

#include <vortexlab/error.hpp>
#include <vortexlab/profiles.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace vortexlab;

namespace {

double max_abs_diff_to_identity(const GLProfile& p) {
    double d = 0.0;
    for (std::size_t j = 0; j < p.grid.size(); ++j) d = std::max(d, std::abs(p.f[j] - p.grid[j]));
    return d;
}

} // namespace

TEST(GLProfile, ZeroPotentialGivesIdentity) {
    for (int N : {2, 3, 7}) {
        const auto g = make_grid(N, 400, Grading::graded(2.0));
        const auto p = solve_gl_profile(N, Potential::zero(), 1.0, g);
        EXPECT_LT(max_abs_diff_to_identity(p), 1e-8) << "N=" << N;
    }
}

TEST(GLProfile, LargeEpsApproachesIdentity) {
    const auto g = make_grid(2, 400, Grading::graded(2.0));
    EXPECT_LT(max_abs_diff_to_identity(solve_gl_profile(2, Potential::quadratic(), 100.0, g)), 1e-2);
}

TEST(GLProfile, MatchesShootingOracle) {
    const int N = 2;
    const double eps = 0.1;
    const auto G = oracle::gl_forcing(N, [](double t) { return t; }, eps);
    const double a = oracle::shoot_slope(N, G, 1.0, 0.01, 1000.0);
    const auto ref = oracle::shoot(N, G, a, {0.25, 0.5, 0.75, 1.0});
    ASSERT_NEAR(ref.back(), 1.0, 1e-8);

    const auto grid = make_grid(N, 2000, Grading::graded(2.0));
    const auto p = solve_gl_profile(N, Potential::quadratic(), eps, grid);
    EXPECT_NEAR(interpolate(grid, p.f, 0.5), ref[1], 1e-5);
    EXPECT_NEAR(interpolate(grid, p.f, 0.25), ref[0], 1e-5);
    EXPECT_NEAR(interpolate(grid, p.f, 0.75), ref[2], 1e-5);
}

TEST(GLProfile, MonotoneAndBounded) {
    const auto g = make_grid(3, 800, Grading::graded(2.0));
    const auto p = solve_gl_profile(3, Potential::quadratic(), 0.05, g);
    EXPECT_LT(p.residual_norm, 1e-9);
    EXPECT_LT(residual(p, Potential::quadratic()), 1e-9);
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        EXPECT_GT(p.f[j], 0.0);
        EXPECT_LT(p.f[j], 1.0);
        EXPECT_GT(p.f[j + 1], p.f[j]);
    }
    EXPECT_DOUBLE_EQ(p.f.back(), 1.0);
}

TEST(GLProfile, ReducedEnergyOfIdentity) {
    // f = r with W = t^2/2, N = 2: 1/2 + 1/(24 eps^2)
    const auto g = make_grid(2, 2000, Grading::graded(2.0));
    GLProfile p{g, 1.0, {}, {}, 0.0, {}};
    p.f = g.nodes();
    p.v.assign(g.size(), 1.0);
    EXPECT_NEAR(reduced_energy_gl(p, Potential::quadratic(), 1.0), 0.5 + 1.0 / 24.0, 1e-6);
}

TEST(GLProfile, RejectsBadInput) {
    const auto g = make_grid(3, 100, Grading::graded(2.0));
    EXPECT_THROW(solve_gl_profile(3, Potential::quadratic(), -1.0, g), Error);
    EXPECT_THROW(solve_gl_profile(2, Potential::quadratic(), 0.1, g), Error);
}

TEST(ExtendedProfile, HighDimensionNeverEscapes) {
    const auto g = make_grid(7, 600, Grading::graded(2.0));
    const auto p = solve_extended_profile(7, Potential::quadratic(), Potential::linear(), 0.1, 5.0, g,
                                          Branch::escaping);
    EXPECT_EQ(p.branch, Branch::non_escaping);
    for (double v : p.g) EXPECT_EQ(v, 0.0);
}

TEST(ExtendedProfile, EscapingInvariants) {
    const double eps = 0.1, eta = 0.6;
    const auto W = Potential::quadratic(), Wt = Potential::linear();
    const auto g = make_grid(3, 1000, Grading::graded(2.0));
    const auto gl = solve_gl_profile(3, W, eps, g);
    const auto p = solve_extended_profile(gl, W, Wt, eta, Branch::escaping);
    ASSERT_EQ(p.branch, Branch::escaping);
    EXPECT_LT(residual(p, W, Wt), 1e-9);
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        EXPECT_LT(p.f[j] * p.f[j] + p.g[j] * p.g[j], 1.0);
        EXPECT_GT(p.f[j + 1], p.f[j]);
        EXPECT_LE(p.g[j + 1], p.g[j]);
        EXPECT_GT(p.g[j], 0.0);
    }
    const auto non = non_escaping_profile(gl, eta);
    EXPECT_GT(reduced_energy_extended(non, W, Wt, eps, eta), reduced_energy_extended(p, W, Wt, eps, eta));
}

TEST(ExtendedProfile, NonEscapingHintReturnsGLProfile) {
    const auto W = Potential::quadratic(), Wt = Potential::linear();
    const auto g = make_grid(3, 500, Grading::graded(2.0));
    const auto gl = solve_gl_profile(3, W, 0.1, g);
    const auto p = solve_extended_profile(gl, W, Wt, 0.6, Branch::non_escaping);
    EXPECT_EQ(p.branch, Branch::non_escaping);
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(p.f[j], gl.f[j], 1e-10);
}

TEST(SphereProfile, MatchesShootingOracle) {
    const int N = 3;
    const auto grid = make_grid(N, 2000, Grading::graded(2.0));
    for (double eta : {1.0, 10.0}) {
        const auto G = oracle::sphere_forcing(N, [](double) { return 1.0; }, eta);
        const double a = oracle::shoot_slope(N, G, std::numbers::pi / 2, 0.5, 5.0);
        const auto ref = oracle::shoot(N, G, a, {0.25, 0.5, 1.0});
        ASSERT_NEAR(ref.back(), std::numbers::pi / 2, 1e-8);

        const auto p = solve_sphere_profile(N, Potential::linear(), eta, grid);
        EXPECT_FALSE(p.no_escape);
        EXPECT_NEAR(interpolate(grid, p.theta, 0.25), ref[0], 1e-5) << "eta=" << eta;
        EXPECT_NEAR(interpolate(grid, p.theta, 0.5), ref[1], 1e-5) << "eta=" << eta;
    }
}

TEST(SphereProfile, PohozaevAndEnergy) {
    const auto Wt = Potential::linear();
    const auto grid = make_grid(3, 2000, Grading::graded(2.0));
    const auto p = solve_sphere_profile(3, Wt, 1.0, grid);
    EXPECT_LT(pohozaev_check(p, Wt, 1.0), 1e-4);
    EXPECT_LT(reduced_energy_mm(p, Wt, 1.0), reduced_energy_mm(equator_profile(grid, 1.0), Wt, 1.0));
    EXPECT_NEAR(reduced_energy_mm(equator_profile(grid, 1.0), Wt, 1.0), 1.0, 1e-9);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) EXPECT_GT(p.theta[j + 1], p.theta[j]);
}

TEST(SphereProfile, HighDimensionCollapsesToEquator) {
    const auto grid = make_grid(7, 600, Grading::graded(2.0));
    EXPECT_TRUE(solve_sphere_profile(7, Potential::linear(), 1.0, grid).no_escape);
}

TEST(NodalDerivative, ExactOnPolynomials) {
    const auto g = make_grid(3, 30, Grading::graded(2.0));
    std::vector<double> u2(g.size()), u4(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        u2[j] = 1.0 + g[j] - 2.0 * g[j] * g[j];
        u4[j] = std::pow(g[j], 4) - g[j];
    }
    const auto d2 = nodal_derivative(g, u2, 3);
    const auto d4 = nodal_derivative(g, u4, 5);
    for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_NEAR(d2[j], 1.0 - 4.0 * g[j], 1e-10);
        EXPECT_NEAR(d4[j], 4.0 * std::pow(g[j], 3) - 1.0, 1e-9);
    }
}
