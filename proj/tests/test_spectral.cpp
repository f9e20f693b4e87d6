#include "oracles.hpp"

#include <vortexlab/error.hpp>
#include <vortexlab/spectral.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace vortexlab;

TEST(RadialOperator, LaplacianThreeDimensions) {
    const auto g = make_grid(3, 2000, Grading::graded(2.0));
    const auto e = smallest_eigenpair(assemble_radial_operator(3, g, 0.0, std::vector<double>(g.size(), 0.0)));
    EXPECT_NEAR(e.eigenvalue, std::numbers::pi * std::numbers::pi, 1e-6);
    EXPECT_LT(e.residual, 1e-8);
}

TEST(RadialOperator, BesselZerosWithAndWithoutAngularTerm) {
    for (auto [N, mu] : {std::pair{2, 0.0}, std::pair{2, 1.0}, std::pair{3, 2.0}, std::pair{5, 0.0}}) {
        const auto g = make_grid(N, 2000, Grading::graded(2.0));
        const auto e = smallest_eigenpair(assemble_radial_operator(N, g, mu, std::vector<double>(g.size(), 0.0)));
        EXPECT_NEAR(e.eigenvalue, oracle::radial_dirichlet_eigenvalue(N, mu), 1e-3) << "N=" << N << " mu=" << mu;
    }
}

TEST(RadialOperator, EigenfunctionNormalisedPositiveAndConsistent) {
    const int N = 3;
    const auto g = make_grid(N, 500, Grading::graded(2.0));
    std::vector<double> V(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) V[j] = -5.0 * (1.0 - g[j] * g[j]);
    const auto op = assemble_radial_operator(N, g, 0.0, V);
    const auto e = smallest_eigenpair(op);

    std::vector<double> q2(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        q2[j] = e.eigenfunction[j] * e.eigenfunction[j];
        if (j + 1 < g.size()) EXPECT_GT(e.eigenfunction[j], 0.0);
    }
    EXPECT_NEAR(g.integrate(q2), 1.0, 1e-3);

    // Rayleigh quotient of the discrete eigenvector
    std::vector<double> x(op.dofs.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = e.eigenfunction[op.dofs[i]];
    double mass = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mass += op.M[i] * x[i] * x[i];
    const double rq = op.A.quadratic_form(x) / mass;
    EXPECT_NEAR(rq, e.discrete_eigenvalue, 1e-10 * std::abs(e.discrete_eigenvalue));
}

TEST(GLLinearization, EpsSquaredEllIncreasing) {
    const auto W = Potential::quadratic();
    const auto g = make_grid(3, 1000, Grading::graded(2.0));
    double prev = -1.0;
    for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const double v = eps * eps * gl_linearization_eigenvalue(3, W, eps, g).ell;
        EXPECT_GT(v, prev) << "eps=" << eps;
        EXPECT_GT(v, -1.0);  // -W'(1)
        prev = v;
    }
    EXPECT_LT(gl_linearization_eigenvalue(3, W, 0.05, g).ell, 0.0);
}

TEST(GLLinearization, HighDimensionBound) {
    const auto g = make_grid(7, 1000, Grading::graded(2.0));
    EXPECT_GE(gl_linearization_eigenvalue(7, Potential::quadratic(), 0.5, g).ell, 0.25);
}

TEST(Epsilon0, SignChangeAroundRoot) {
    const auto W = Potential::quadratic();
    const auto g = make_grid(3, 1000, Grading::graded(2.0));
    const auto r = find_epsilon0(3, W, {0.1, 0.4}, 1e-8, g);
    EXPECT_LT(std::abs(r.ell), 1e-6);
    EXPECT_LT(gl_linearization_eigenvalue(3, W, r.eps0 - 0.01, g).ell, 0.0);
    EXPECT_GT(gl_linearization_eigenvalue(3, W, r.eps0 + 0.01, g).ell, 0.0);
    EXPECT_FALSE(r.history.empty());
}

TEST(Epsilon0, Errors) {
    const auto W = Potential::quadratic();
    const auto g7 = make_grid(7, 200, Grading::graded(2.0));
    try {
        find_epsilon0(7, W, {0.1, 1.0}, 1e-6, g7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::no_threshold);
    }
    const auto g3 = make_grid(3, 200, Grading::graded(2.0));
    try {
        find_epsilon0(3, W, {0.5, 1.0}, 1e-6, g3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::bracket);
    }
    EXPECT_FALSE(has_threshold(3, Potential::zero()));
    EXPECT_TRUE(has_threshold(6, W));
}
