#pragma once

#include "vortexlab/grid.hpp"
#include "vortexlab/potential.hpp"
#include "vortexlab/profiles.hpp"
#include "vortexlab/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vortexlab {

enum class PhaseClass { escaping, non_escaping, boundary };
std::string to_string(PhaseClass c);

struct PhasePoint {
    double eps = 0.0, eta = 0.0;
    PhaseClass cls = PhaseClass::non_escaping;
    double criterion = 0.0;  // l(eps) + W~'(0)/eta^2
    double ell = 0.0;
    double band = 0.0;
    bool confirmed = false;  // solver was run and agreed
    std::optional<Branch> solver_branch;
    double solver_gmax = 0.0;
};

// eta0 = sqrt(W~'(0)/|l(eps)|). Throws no_escaping_region for N >= 7 or
// W'(1) = 0 and out_of_range when l(eps) >= 0, i.e. eps >= eps0.
double eta0(int N, const Potential& W, const Potential& Wt, double eps, const RadialGrid& grid,
            const SolverOptions& opts = {});
double eta0(const GLLinearization& lin, const Potential& W, const Potential& Wt);

// The band |criterion| <= 1e-6 (1 + |l|) + |l_h - l| is classified Boundary;
// the second term is the size of the Richardson correction, a proxy for the
// discretisation error of l. With confirm, the escaping-branch solver runs and
// a disagreement with a non-Boundary class throws `inconsistent`.
PhasePoint classify_point(int N, const Potential& W, const Potential& Wt, double eps, double eta,
                          const RadialGrid& grid, bool confirm, const SolverOptions& opts = {});
PhasePoint classify_point(const GLLinearization& lin, const Potential& W, const Potential& Wt, double eta,
                          bool confirm, const SolverOptions& opts = {});

struct SweepOptions {
    double confirm_fraction = 0.0;
    std::uint64_t seed = 20240611;
    int jobs = 1;
    SolverOptions solver;
};

struct PhaseDiagram {
    int N = 0;
    std::string W, Wt;  // potential JSON
    std::vector<double> eps, eta;
    std::vector<std::vector<PhasePoint>> points;  // [eps index][eta index]
    std::optional<double> eps0;                   // bracketed from the eps samples when they straddle it
    std::vector<std::pair<double, double>> eta0;  // (eps, eta0) for every eps sample with l < 0
    std::vector<double> ell;                      // l(eps) per eps sample

    // structural checks: at most one class change per eta-row and
    // eta0(eps)/eps non-decreasing
    bool rows_monotone() const;
    bool eta0_ratio_monotone() const;
};

// Columns (one eps each) are solved once and shared across their eta-row.
// Points are confirmed by the solver with probability confirm_fraction using
// a seeded generator, so the result is reproducible.
PhaseDiagram sweep(int N, const Potential& W, const Potential& Wt, const std::vector<double>& eps,
                   const std::vector<double>& eta, const RadialGrid& grid, const SweepOptions& opts = {});

// lo:hi:count, inclusive linspace; when lo <= 0 the samples are
// lo + (hi - lo)(i + 1)/count so that every sample is positive.
std::vector<double> parse_range(const std::string& spec);

} // namespace vortexlab
