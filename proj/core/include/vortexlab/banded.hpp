#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vortexlab {

// Symmetric band matrix, lower band stored row-wise: (i, i-d) for d = 0..bw.
class SymBand {
public:
    SymBand() = default;
    SymBand(std::size_t n, std::size_t bandwidth) : n_(n), bw_(bandwidth), a_(n * (bandwidth + 1), 0.0) {}

    std::size_t size() const noexcept { return n_; }
    std::size_t bandwidth() const noexcept { return bw_; }

    double get(std::size_t i, std::size_t j) const;
    void add(std::size_t i, std::size_t j, double v);  // symmetric: adds to (i,j) and (j,i) as one entry
    void add_diagonal(std::span<const double> d, double scale);
    std::vector<double> multiply(std::span<const double> x) const;
    double quadratic_form(std::span<const double> x) const;

private:
    friend class BandLDLT;
    std::size_t n_ = 0;
    std::size_t bw_ = 0;
    std::vector<double> a_;
};

// Unpivoted LDL^T of a symmetric band matrix. The signs of D give the
// inertia (Sylvester), which drives bisection and Newton regularisation.
class BandLDLT {
public:
    explicit BandLDLT(const SymBand& a);

    std::size_t negative_pivots() const noexcept { return negatives_; }
    bool has_tiny_pivot() const noexcept { return tiny_; }
    std::vector<double> solve(std::span<const double> b) const;

private:
    std::size_t n_, bw_;
    std::vector<double> l_;  // same layout as SymBand, unit diagonal implied
    std::vector<double> d_;
    std::size_t negatives_ = 0;
    bool tiny_ = false;
};

// Number of eigenvalues of the pencil (A, diag(m)) strictly below sigma.
std::size_t pencil_count_below(const SymBand& a, std::span<const double> m, double sigma);

struct PencilEigen {
    double value = 0.0;          // Rayleigh quotient of vector
    std::vector<double> vector;  // M-normalised
    double residual = 0.0;       // ||A x - value M x||_inf / ||A||
    int bisection_steps = 0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
};

// Smallest eigenpair of A x = lambda diag(m) x by Sturm-count bisection and
// inverse iteration. Throws eigensolver_failure with the bracket trace.
PencilEigen smallest_pencil_eigen(const SymBand& a, std::span<const double> m);

} // namespace vortexlab
