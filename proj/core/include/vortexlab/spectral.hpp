#pragma once

#include "vortexlab/banded.hpp"
#include "vortexlab/grid.hpp"
#include "vortexlab/potential.hpp"
#include "vortexlab/profiles.hpp"

#include <utility>
#include <vector>

namespace vortexlab {

// Discretisation of -(r^{N-1} q')' + r^{N-1}(mu/r^2 + V) q = lambda r^{N-1} q on
// (0,1): linear-element stiffness with exact weights, lumped masses, Dirichlet
// at r = 1. At r_min the unknown is dropped (Dirichlet) when mu > 0 and kept
// with a natural condition plus the [0, r_min] core mass when mu = 0.
struct SLOperator {
    RadialGrid grid;
    double mu = 0.0;
    std::vector<double> V;           // node samples
    std::vector<std::size_t> dofs;   // grid node of each unknown
    SymBand A;
    std::vector<double> M;           // diagonal mass
};

struct EigenPair {
    // Richardson extrapolation of the fine and every-other-node discrete
    // eigenvalues; this is the value reported as the eigenvalue.
    double eigenvalue = 0.0;
    double discrete_eigenvalue = 0.0;  // fine grid, consistent with eigenfunction
    double coarse_eigenvalue = 0.0;
    std::vector<double> eigenfunction;  // node values, \int q^2 r^{N-1} = 1, q > 0 near r_min
    double residual = 0.0;              // relative ||Aq - lambda M q||_inf
};

SLOperator assemble_radial_operator(int N, const RadialGrid& grid, double mu, std::vector<double> V);
EigenPair smallest_eigenpair(const SLOperator& op);

struct GLLinearization {
    double ell = 0.0;
    EigenPair pair;
    GLProfile profile;
};

// l(eps) = smallest eigenvalue of -Delta - W'(1 - f_eps^2)/eps^2 on B^N.
GLLinearization gl_linearization_eigenvalue(int N, const Potential& W, double eps, const RadialGrid& grid,
                                            const SolverOptions& opts = {});
GLLinearization gl_linearization_eigenvalue(const GLProfile& profile, const Potential& W);

struct Epsilon0 {
    double eps0 = 0.0;
    double ell = 0.0;  // l(eps0)
    int iterations = 0;
    std::vector<std::pair<double, double>> history;  // (eps, l(eps))
};

// Bisection on the sign of l; eps^2 l(eps) is strictly increasing so the
// root is unique. Throws no_threshold when N >= 7 or W'(1) = 0, bracket_error
// when the bracket does not straddle a sign change.
Epsilon0 find_epsilon0(int N, const Potential& W, std::pair<double, double> bracket, double tol,
                       const RadialGrid& grid, const SolverOptions& opts = {});

// Only a quick structural check: N <= 6 and W'(1) > 0.
bool has_threshold(int N, const Potential& W);

} // namespace vortexlab
