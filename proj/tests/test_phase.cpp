#include <vortexlab/error.hpp>
#include <vortexlab/phase.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace vortexlab;

TEST(ParseRange, InclusiveAndShifted) {
    const auto a = parse_range("0.1:0.5:5");
    ASSERT_EQ(a.size(), 5u);
    EXPECT_DOUBLE_EQ(a.front(), 0.1);
    EXPECT_DOUBLE_EQ(a.back(), 0.5);
    const auto b = parse_range("0:1.5:60");
    ASSERT_EQ(b.size(), 60u);
    EXPECT_DOUBLE_EQ(b.front(), 0.025);
    EXPECT_DOUBLE_EQ(b.back(), 1.5);
    EXPECT_EQ(parse_range("0.3:0.3:1"), std::vector<double>{0.3});
    for (const char* bad : {"1:0:3", "0:1", "0:1:0", "a:1:3", "0:1:2.5"}) EXPECT_THROW(parse_range(bad), Error) << bad;
}

class Phase3 : public ::testing::Test {
protected:
    const Potential W = Potential::quadratic(), Wt = Potential::linear();
    const RadialGrid grid = make_grid(3, 600, Grading::graded(2.0));
};

TEST_F(Phase3, Eta0CriterionAndErrors) {
    const auto lin = gl_linearization_eigenvalue(3, W, 0.1, grid);
    const double e0 = eta0(lin, W, Wt);
    EXPECT_NEAR(e0, 1.0 / std::sqrt(-lin.ell), 1e-14);
    EXPECT_EQ(classify_point(lin, W, Wt, 2.0 * e0, false).cls, PhaseClass::escaping);
    EXPECT_EQ(classify_point(lin, W, Wt, 0.5 * e0, false).cls, PhaseClass::non_escaping);
    EXPECT_EQ(classify_point(lin, W, Wt, e0, false).cls, PhaseClass::boundary);
    EXPECT_TRUE(classify_point(lin, W, Wt, 2.0 * e0, true).confirmed);

    try {
        eta0(3, W, Wt, 0.5, grid);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::out_of_range);
    }
    const auto g7 = make_grid(7, 200, Grading::graded(2.0));
    try {
        eta0(7, W, Wt, 0.1, g7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::no_escaping_region);
    }
}

TEST_F(Phase3, Eta0BlowsUpAtThreshold) {
    const auto r = find_epsilon0(3, W, {0.1, 0.4}, 1e-12, grid);
    EXPECT_GT(eta0(3, W, Wt, r.eps0 - 1e-9, grid), 1e3);
    EXPECT_LT(eta0(3, W, Wt, r.eps0 - 1e-2, grid), 1e2);
}

TEST_F(Phase3, SweepIsIndependentOfWorkerCount) {
    SweepOptions o;
    o.confirm_fraction = 0.3;
    o.jobs = 1;
    const auto eps = parse_range("0.05:0.3:4"), eta = parse_range("0.1:2:5");
    const auto a = sweep(3, W, Wt, eps, eta, grid, o);
    o.jobs = 3;
    const auto b = sweep(3, W, Wt, eps, eta, grid, o);
    for (std::size_t i = 0; i < eps.size(); ++i)
        for (std::size_t j = 0; j < eta.size(); ++j) {
            EXPECT_EQ(a.points[i][j].cls, b.points[i][j].cls);
            EXPECT_EQ(a.points[i][j].confirmed, b.points[i][j].confirmed);
            EXPECT_EQ(a.points[i][j].criterion, b.points[i][j].criterion);
        }
    EXPECT_TRUE(a.rows_monotone());
    EXPECT_TRUE(a.eta0_ratio_monotone());
    ASSERT_TRUE(a.eps0.has_value());
    EXPECT_NEAR(*a.eps0, 0.204, 1e-3);
}

TEST(Phase, HighDimensionAllNonEscaping) {
    const auto g = make_grid(7, 300, Grading::graded(2.0));
    const auto d = sweep(7, Potential::quadratic(), Potential::linear(), parse_range("0:1.5:6"), parse_range("0:3:6"), g);
    for (const auto& row : d.points)
        for (const auto& p : row) EXPECT_EQ(p.cls, PhaseClass::non_escaping);
    EXPECT_TRUE(d.eta0.empty());
    EXPECT_FALSE(d.eps0.has_value());
}
