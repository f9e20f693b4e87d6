#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vortexlab {

struct Grading {
    enum class Kind { uniform, graded };
    Kind kind = Kind::graded;
    double beta = 2.0;

    static Grading uniform() { return {Kind::uniform, 1.0}; }
    static Grading graded(double beta) { return {Kind::graded, beta}; }
};

// Nodes r_1 < ... < r_n = 1 on (0,1] for the radial measure r^{N-1} dr.
//
// Quadrature is product integration: the weight r^p is integrated exactly and
// phi is interpolated by piecewise quadratics (pairs of cells, one trailing
// single cell when the cell count is odd, extrapolation into [0, r_1]).
// The rule is exact for quadratic phi and converges at third order.
class RadialGrid {
public:
    RadialGrid(int N, std::vector<double> nodes, Grading grading = Grading::uniform());

    int dimension() const noexcept { return N_; }
    std::size_t size() const noexcept { return r_.size(); }
    double operator[](std::size_t j) const { return r_[j]; }
    const std::vector<double>& nodes() const noexcept { return r_; }
    double r_min() const noexcept { return r_.front(); }
    const Grading& grading() const noexcept { return grading_; }

    // weights for \int_0^1 phi r^{N-1} dr
    const std::vector<double>& weights() const noexcept { return w_; }
    // weights for \int_0^1 phi r^p dr, p >= -1; for p < 0 the segment [0, r_1]
    // is dropped, so phi must vanish at the origin.
    std::vector<double> weights(int p) const;

    double integrate(std::span<const double> phi) const;
    double integrate(std::span<const double> phi, int p) const;

    // Every second node, keeping r = 1. Used for Richardson extrapolation.
    RadialGrid coarsened() const;
    // Node indices of coarsened() inside this grid.
    std::vector<std::size_t> coarse_indices() const;

    bool same_nodes(const RadialGrid& other) const;
    std::string describe() const;

private:
    int N_;
    std::vector<double> r_;
    std::vector<double> w_;
    Grading grading_;
};

RadialGrid make_grid(int N, int n, Grading grading);

// \int_a^{a+h} r^p (r-a)^k dr without cancellation, p >= -1 integer, a >= 0.
double shifted_moment(int p, int k, double a, double h);
// \int_a^b r^p dr
double moment(int p, double a, double b);

// Dual-cell ("lumped") masses \int r^p over [m_{j-1}, m_j] with m_j the cell
// midpoints. If include_core, node 0 also owns [0, r_1] (requires p >= 0).
std::vector<double> lumped_masses(const RadialGrid& grid, int p, bool include_core);
// Cell stiffness \int_{r_j}^{r_{j+1}} r^p dr / h_j^2 for j = 0..n-2.
std::vector<double> cell_stiffness(const RadialGrid& grid, int p);

} // namespace vortexlab
