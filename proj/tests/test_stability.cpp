#include "oracles.hpp"

#include <vortexlab/error.hpp>
#include <vortexlab/spectral.hpp>
#include <vortexlab/stability.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace vortexlab;

TEST(Harmonics, EigenvaluesAndMultiplicities) {
    for (int k = 0; k < 6; ++k) {
        EXPECT_DOUBLE_EQ(harmonic_eigenvalue(3, k), k * (k + 1.0));
        EXPECT_EQ(harmonic_multiplicity(3, k), 2 * k + 1);
        EXPECT_EQ(harmonic_multiplicity(2, k), k == 0 ? 1 : 2);
        EXPECT_EQ(harmonic_degree(4, harmonic_eigenvalue(4, k)), k);
    }
    EXPECT_EQ(harmonic_multiplicity(4, 2), 9);
    try {
        harmonic_degree(3, 3.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::invalid_lambda);
    }
}

TEST(DivFree, Certificate) {
    EXPECT_TRUE(divfree_certificate(3, -0.5));
    EXPECT_FALSE(divfree_certificate(5, 0.5));
    EXPECT_TRUE(divfree_certificate(5, -1.5));
    EXPECT_FALSE(divfree_certificate(5, -3.5));  // below -(N-2)
}

class EscapingPoint : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        grid = new RadialGrid(make_grid(3, 800, Grading::graded(2.0)));
        const auto gl = solve_gl_profile(3, W, eps, *grid);
        prof = new ExtendedProfile(solve_extended_profile(gl, W, Wt, eta, Branch::escaping));
    }
    static void TearDownTestSuite() {
        delete prof;
        delete grid;
    }
    static inline const Potential W = Potential::quadratic(), Wt = Potential::linear();
    static constexpr double eps = 0.1, eta = 0.6;
    static inline RadialGrid* grid = nullptr;
    static inline ExtendedProfile* prof = nullptr;
};

TEST_F(EscapingPoint, FormThroughMatrixMatchesCellIntegration) {
    ASSERT_EQ(prof->branch, Branch::escaping);
    for (double lambda : {0.0, 2.0, 6.0}) {
        const auto b = mode_block(*prof, W, Wt, eps, eta, lambda);
        std::vector<std::vector<double>> trial(b.field_count(), std::vector<double>(grid->size()));
        for (int a = 0; a < b.field_count(); ++a)
            for (std::size_t j = 0; j < grid->size(); ++j) {
                const double r = (*grid)[j];
                trial[a][j] = std::sin(std::numbers::pi * r) * (1.0 + a * r) * r;
            }
        const double m = mode_form(b, trial), d = mode_form_direct(b, trial);
        EXPECT_NEAR(m, d, 1e-10 * std::abs(d)) << "lambda=" << lambda;
    }
}

TEST_F(EscapingPoint, HardyIdentity) {
    HardyTrial t;
    t.s = [](double r) { return r * (1 - r) * (1 - r); };
    t.ds = [](double r) { return (1 - r) * (1 - 3 * r); };
    t.q = [](double r) { return (1 - r) * std::cos(r); };
    t.dq = [](double r) { return -std::cos(r) - (1 - r) * std::sin(r); };
    const auto h = hardy_identity_check(*prof, W, Wt, eps, eta, t);
    EXPECT_LT(h.discrepancy, 1e-6);
}

TEST_F(EscapingPoint, PositiveDefinite) {
    const auto rep = spectrum_summary(*prof, W, Wt, eps, eta, 6.0);
    EXPECT_EQ(rep.verdict, Verdict::positive_definite);
    EXPECT_TRUE(rep.certificate);
    for (const auto& m : rep.modes) EXPECT_GT(m.eigen.eigenvalue, 0.0);
}

TEST(Stability, NonEscapingQSectorIsShiftedEll) {
    const auto W = Potential::quadratic(), Wt = Potential::linear();
    const auto g = make_grid(3, 800, Grading::graded(2.0));
    const double eps = 0.1, eta = 0.6;
    const auto gl = solve_gl_profile(3, W, eps, g);
    const double ell = gl_linearization_eigenvalue(gl, W).ell;
    const auto rep = spectrum_summary(non_escaping_profile(gl, eta), W, Wt, eps, eta, 2.0);
    ASSERT_TRUE(rep.q_sector_eigenvalue.has_value());
    EXPECT_NEAR(*rep.q_sector_eigenvalue, ell + 1.0 / (eta * eta), 1e-6);
    EXPECT_EQ(rep.verdict, Verdict::indefinite);
}

TEST(Stability, GLAndSpherePositive) {
    const auto g3 = make_grid(3, 600, Grading::graded(2.0));
    const auto gl = solve_gl_profile(3, Potential::quadratic(), 0.5, g3);
    EXPECT_EQ(spectrum_summary(gl, Potential::quadratic(), 0.5, 6.0).verdict, Verdict::positive_definite);
    const auto sp = solve_sphere_profile(3, Potential::linear(), 1.0, g3);
    EXPECT_EQ(spectrum_summary(sp, Potential::linear(), 1.0, 6.0).verdict, Verdict::positive_definite);
}

TEST(Stability, RejectsUnconvergedProfile) {
    const auto g = make_grid(3, 200, Grading::graded(2.0));
    auto gl = solve_gl_profile(3, Potential::quadratic(), 0.5, g);
    gl.f[50] += 0.1;
    gl.residual_norm = 1.0;
    EXPECT_THROW(spectrum_summary(gl, Potential::quadratic(), 0.5), Error);
}

TEST(Equator, AssemblyMatchesExactIntegral) {
    // the trial form integrated by adaptive quadrature in t = ln(r/b), without the a^2 bound
    const double a = 0.1, L = 4.0, b = a * std::exp(-L), k = std::numbers::pi / L;
    for (int N : {3, 6}) {
        const double c = (N - 2) / 2.0;
        const double exact = oracle::integrate(
            [&](double t) {
                const double r = b * std::exp(t);
                const double tau = std::sin(k * t) * std::pow(r, -c);
                const double dtau = (k * std::cos(k * t) - c * std::sin(k * t)) * std::pow(r, -c - 1);
                return (dtau * dtau - (N - 1) * tau * tau / (r * r) + tau * tau) * std::pow(r, N);
            },
            0.0, L);
        const auto e = equator_instability_value(N, Potential::linear(), 1.0, a, b);
        EXPECT_LT(e.closed_form, 0.0);
        EXPECT_GE(e.closed_form, exact);  // upper bound
        EXPECT_NEAR(e.discrete, exact, 5e-3 * std::abs(exact)) << "N=" << N;
    }
    const auto e7 = equator_instability_value(7, Potential::linear(), 1.0, a, b);
    EXPECT_GT(e7.closed_form, 0.0);
    EXPECT_THROW(equator_instability_value(3, Potential::linear(), 1.0, 0.01, 0.1), Error);
}
