#pragma once

#include "vortexlab/banded.hpp"
#include "vortexlab/grid.hpp"
#include "vortexlab/potential.hpp"
#include "vortexlab/profiles.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vortexlab {

// Second variation restricted to one spherical-harmonic level
// lambda = k(k+N-2). With the radial weight r^{N-1} the block form is
//
//   Q[u] = sum_a w_a \int u_a'^2 + \int u^T (C2(r)/r^2 + C0(r)) u,
//
// discretised with the same linear elements and lumped masses as the profile
// solvers. Fields:
//   extended  lambda = 0: (s, q)          lambda > 0: (s, psi, q)
//   GL        lambda = 0: (s)             lambda > 0: (s, psi)
//   sphere    lambda = 0: (tau)           lambda > 0: (tau, psi)
// where for the sphere the tangency constraint is solved by
// s = tau cos(theta), q = -tau sin(theta).
//
// Every field is Dirichlet at r = 1. At r_min a field is Dirichlet when it
// carries a 1/r^2 term and natural (with the [0, r_min] core mass) when it
// does not, which is only q at lambda = 0.
struct ModeBlock {
    enum class Source { gl, extended, sphere };

    int N = 0;
    int degree = 0;  // k
    double lambda = 0.0;
    Source source = Source::extended;
    std::vector<std::string> fields;
    RadialGrid grid;
    std::vector<double> stiffness_weight;  // w_a
    std::vector<double> mass_weight;       // the block mass is w_a r^{N-1}
    std::vector<bool> dirichlet_origin;
    std::vector<double> c2, c0;  // node-major F x F coefficient matrices

    struct Dof {
        std::size_t node;
        int field;
    };
    std::vector<Dof> dofs;
    SymBand A;
    std::vector<double> M;

    int field_count() const { return static_cast<int>(fields.size()); }
};

int harmonic_degree(int N, double lambda);  // throws invalid_lambda
double harmonic_eigenvalue(int N, int k);
long long harmonic_multiplicity(int N, int k);

ModeBlock mode_block(const ExtendedProfile& p, const Potential& W, const Potential& Wt, double eps, double eta,
                     double lambda);
ModeBlock mode_block(const GLProfile& p, const Potential& W, double eps, double lambda);
ModeBlock mode_block(const SphereProfile& p, const Potential& Wt, double eta, double lambda);

// Trial values are given per field at the grid nodes; values on constrained
// nodes are ignored. mode_form goes through the assembled matrix,
// mode_form_direct sums the integrand cell by cell.
double mode_form(const ModeBlock& b, const std::vector<std::vector<double>>& trial);
double mode_form_direct(const ModeBlock& b, const std::vector<std::vector<double>>& trial);

struct ModeEigen {
    double eigenvalue = 0.0;  // Richardson value from the fine and coarse grids
    double discrete_eigenvalue = 0.0;
    double coarse_eigenvalue = 0.0;
    std::vector<std::vector<double>> vector;  // per field, node values, M-normalised
    double residual = 0.0;
};

ModeEigen mode_min_eigenvalue(const ModeBlock& b);

// Same block with only the listed fields kept (e.g. the (0, q) sector).
ModeBlock restrict_fields(const ModeBlock& b, const std::vector<std::string>& keep);

// Trial (s, q) with derivatives, evaluated pointwise.
struct HardyTrial {
    std::function<double(double)> s, ds, q, dq;
};

struct HardyCheck {
    double direct = 0.0;
    double factored = 0.0;
    double discrepancy = 0.0;  // |direct - factored| / max(|direct|, |factored|)
};

// lambda = 0 form at an escaping profile computed directly and after
// factoring s = f (s/f), q = g (q/g) and integrating by parts against the
// profile equations.
HardyCheck hardy_identity_check(const ExtendedProfile& p, const Potential& W, const Potential& Wt, double eps,
                                double eta, const HardyTrial& trial);

// alpha in (-(N-2), 0) with (alpha+1)(alpha+N-3) < N-3; vacuous for N = 2.
bool divfree_certificate(int N, double alpha);

struct EquatorInstability {
    double closed_form = 0.0;
    double discrete = 0.0;
    double relative_gap = 0.0;
};

// Log-sine trial q(r) = sin(pi ln(r/b)/ln(a/b)) r^{-(N-2)/2} on [b, a] for the
// normal perturbation of the equator map. closed_form is
// (1/2) ln(a/b) [(pi/ln(a/b))^2 + (N^2-8N+8)/4 + W~'(0) a^2/eta^2], an upper
// bound for the form; discrete is the assembled lambda = 0 form on `grid`.
EquatorInstability equator_instability_value(int N, const Potential& Wt, double eta, double a, double b,
                                             const std::optional<RadialGrid>& grid = std::nullopt);

enum class Verdict { positive_definite, kernel, indefinite, uncertified };
std::string to_string(Verdict v);

struct ModeResult {
    int degree = 0;
    double lambda = 0.0;
    long long multiplicity = 1;
    ModeEigen eigen;
};

struct StabilityReport {
    int N = 0;
    std::vector<ModeResult> modes;
    double band = 0.0;  // kernel band 1e-4 (1 + |l|)
    double ell = 0.0;   // smallest eigenvalue of -Delta - W'(1-f^2-g^2)/eps^2 (0 for the sphere)
    Verdict verdict = Verdict::positive_definite;
    int kernel_dim = 0;
    std::optional<std::size_t> kernel_mode;  // index into modes
    std::vector<double> kernel_function;     // dominant field of the kernel eigenvector
    std::string kernel_field;
    bool kernel_sign_definite = false;
    bool certificate = true;  // algebraic condition and f' > 0
    double alpha = 0.0;
    bool lambda_monotone = true;
    // lambda = 0 (0, q) sector when g == 0
    std::optional<double> q_sector_eigenvalue;
};

// lambda_max <= 0 selects 3(N+1).
StabilityReport spectrum_summary(const ExtendedProfile& p, const Potential& W, const Potential& Wt, double eps,
                                 double eta, double lambda_max = 0.0);
StabilityReport spectrum_summary(const GLProfile& p, const Potential& W, double eps, double lambda_max = 0.0);
StabilityReport spectrum_summary(const SphereProfile& p, const Potential& Wt, double eta, double lambda_max = 0.0);

} // namespace vortexlab
