#pragma once

#include "vortexlab/grid.hpp"
#include "vortexlab/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vortexlab {

struct SolverOptions {
    double tol = 1e-10;         // scaled max-norm residual
    int max_newton = 200;       // per continuation stage
    int continuation_steps = 400;
    double escape_tol = 1e-6;   // max g below this means non-escaping
    double continuation_start = 1.0;  // GL continuation starts at max(eps, this)
};

struct TraceEntry {
    std::string stage;
    double parameter = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct GLProfile {
    RadialGrid grid;
    double eps = 0.0;
    std::vector<double> f;
    std::vector<double> v;  // f / r
    double residual_norm = 0.0;
    std::vector<TraceEntry> trace;
};

enum class Branch { escaping, non_escaping };

struct ExtendedProfile {
    RadialGrid grid;
    double eps = 0.0, eta = 0.0;
    std::vector<double> f, g;
    Branch branch = Branch::non_escaping;
    double residual_norm = 0.0;
    std::vector<TraceEntry> trace;
    // escaping requested but the iteration collapsed onto g = 0
    bool escape_unavailable = false;
    // the collapse happened with the g-sector Hessian inside the boundary band
    bool boundary_ambiguous = false;
};

struct SphereProfile {
    RadialGrid grid;
    double eta = 0.0;
    std::vector<double> theta;
    double residual_norm = 0.0;
    bool no_escape = false;  // iteration collapsed onto the equator theta = pi/2
    std::vector<TraceEntry> trace;
};

// Optional starting point for the extended solver (node values on the grid).
struct ExtendedGuess {
    std::vector<double> f, g;
};

GLProfile solve_gl_profile(int N, const Potential& W, double eps, const RadialGrid& grid,
                           const SolverOptions& opts = {});

ExtendedProfile solve_extended_profile(int N, const Potential& W, const Potential& Wt, double eps, double eta,
                                       const RadialGrid& grid, Branch hint, const SolverOptions& opts = {},
                                       const std::optional<ExtendedGuess>& guess = std::nullopt);
// Same, reusing a GL profile already solved for (N, W, eps) on the grid.
ExtendedProfile solve_extended_profile(const GLProfile& gl, const Potential& W, const Potential& Wt, double eta,
                                       Branch hint, const SolverOptions& opts = {},
                                       const std::optional<ExtendedGuess>& guess = std::nullopt);

SphereProfile solve_sphere_profile(int N, const Potential& Wt, double eta, const RadialGrid& grid,
                                   const SolverOptions& opts = {});

// theta == pi/2 on the grid, the equator map.
SphereProfile equator_profile(const RadialGrid& grid, double eta);
// Non-escaping critical point (f_eps, 0) of the extended functional.
ExtendedProfile non_escaping_profile(const GLProfile& gl, double eta);

double reduced_energy_gl(const GLProfile& p, const Potential& W, double eps);
double reduced_energy_extended(const ExtendedProfile& p, const Potential& W, const Potential& Wt, double eps,
                               double eta);
double reduced_energy_mm(const SphereProfile& p, const Potential& Wt, double eta);

// Scaled max-norm residual of the discrete Euler-Lagrange equations, assembled
// independently of the Newton solver. Each nodal equation is divided by the
// diagonal of its stiffness-plus-mass stencil, so the value is in units of the
// unknown (v, g or theta).
double residual(const GLProfile& p, const Potential& W);
double residual(const ExtendedProfile& p, const Potential& W, const Potential& Wt);
double residual(const SphereProfile& p, const Potential& Wt);

// max over interior nodes of |P'(r) + 2(N-2) r theta'^2 + (2r/eta^2) W~(cos^2 theta)|
double pohozaev_check(const SphereProfile& p, const Potential& Wt, double eta);

// Nodal derivative from the Lagrange interpolant through 3 or 5 neighbouring
// nodes (centred inside, one-sided at the ends).
std::vector<double> nodal_derivative(const RadialGrid& grid, const std::vector<double>& u, int points = 3);

// Piecewise-linear interpolation of nodal values; constant below r_min.
double interpolate(const RadialGrid& grid, const std::vector<double>& u, double r);

} // namespace vortexlab
