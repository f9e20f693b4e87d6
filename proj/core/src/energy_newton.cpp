#include "energy_newton.hpp"

#include "vortexlab/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vortexlab::detail {

namespace {

constexpr double kStepTol = 1e-12;

std::size_t free_nodes(const EnergyProblem& p) { return p.nodes - 1; }

void assemble(const EnergyProblem& p, const std::vector<double>& u, std::vector<double>* g, SymBand* h) {
    const std::size_t F = static_cast<std::size_t>(p.fields);
    const std::size_t nf = free_nodes(p);
    if (g) g->assign(nf * F, 0.0);
    if (h) *h = SymBand(nf * F, F);
    LocalTerm t;
    for (std::size_t j = 0; j < nf; ++j) {
        t = LocalTerm{};
        p.local(j, &u[j * F], t);
        for (std::size_t a = 0; a < F; ++a) {
            if (g) (*g)[j * F + a] += t.grad[a];
            if (h)
                for (std::size_t b = 0; b <= a; ++b) h->add(j * F + a, j * F + b, t.hess[a][b]);
        }
    }
    for (std::size_t a = 0; a < F; ++a) {
        const auto& k = p.stiffness[a];
        for (std::size_t j = 0; j + 1 < p.nodes; ++j) {
            const double d = u[(j + 1) * F + a] - u[j * F + a];
            if (g) {
                (*g)[j * F + a] -= k[j] * d;
                if (j + 1 < nf) (*g)[(j + 1) * F + a] += k[j] * d;
            }
            if (h) {
                h->add(j * F + a, j * F + a, k[j]);
                if (j + 1 < nf) {
                    h->add((j + 1) * F + a, (j + 1) * F + a, k[j]);
                    h->add((j + 1) * F + a, j * F + a, -k[j]);
                }
            }
        }
    }
}

std::vector<double> diag_scale(const EnergyProblem& p) {
    const std::size_t F = static_cast<std::size_t>(p.fields);
    const std::size_t nf = free_nodes(p);
    std::vector<double> d(nf * F, 0.0);
    for (std::size_t a = 0; a < F; ++a) {
        for (std::size_t j = 0; j < nf; ++j) {
            double s = p.mass[a][j] + p.stiffness[a][j];
            if (j > 0) s += p.stiffness[a][j - 1];
            d[j * F + a] = s;
        }
    }
    return d;
}

double scaled_max(const std::vector<double>& g, const std::vector<double>& d) {
    double r = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) r = std::max(r, std::abs(g[i]) / d[i]);
    return r;
}

} // namespace

double energy(const EnergyProblem& p, const std::vector<double>& u) {
    const std::size_t F = static_cast<std::size_t>(p.fields);
    double e = 0.0;
    LocalTerm t;
    for (std::size_t j = 0; j < free_nodes(p); ++j) {
        t = LocalTerm{};
        p.local(j, &u[j * F], t);
        e += t.value;
    }
    for (std::size_t a = 0; a < F; ++a)
        for (std::size_t j = 0; j + 1 < p.nodes; ++j) {
            const double d = u[(j + 1) * F + a] - u[j * F + a];
            e += 0.5 * p.stiffness[a][j] * d * d;
        }
    return e;
}

std::vector<double> gradient(const EnergyProblem& p, const std::vector<double>& u) {
    std::vector<double> g;
    assemble(p, u, &g, nullptr);
    return g;
}

double scaled_residual(const EnergyProblem& p, const std::vector<double>& u) {
    return scaled_max(gradient(p, u), diag_scale(p));
}

NewtonReport minimise(const EnergyProblem& p, std::vector<double>& u, double tol, int max_iter) {
    const std::size_t F = static_cast<std::size_t>(p.fields);
    const std::size_t nf = free_nodes(p);
    for (std::size_t a = 0; a < F; ++a) u[nf * F + a] = p.boundary[a];
    const auto dscale = diag_scale(p);

    NewtonReport rep;
    std::vector<double> g;
    SymBand h;
    double e0 = energy(p, u);
    double shift = 0.0;
    for (int it = 0; it <= max_iter; ++it) {
        assemble(p, u, &g, &h);
        rep.residual = scaled_max(g, dscale);
        rep.iterations = it;
        if (!std::isfinite(rep.residual)) {
            rep.message = "non-finite residual";
            return rep;
        }
        if (it == max_iter) break;

        // Shift H + s D until it is positive definite; the shift is relaxed
        // geometrically once the iteration is in a convex neighbourhood.
        shift = shift > 0.0 ? shift * 0.1 : 0.0;
        if (shift < 1e-12) shift = 0.0;
        std::vector<double> step;
        for (int tries = 0; tries < 60; ++tries) {
            SymBand hs = h;
            if (shift > 0.0) hs.add_diagonal(dscale, shift);
            BandLDLT fact(hs);
            if (fact.negative_pivots() == 0 && !fact.has_tiny_pivot()) {
                step = fact.solve(g);
                break;
            }
            shift = shift > 0.0 ? shift * 10.0 : 1e-8;
        }
        if (step.empty()) {
            rep.message = "could not regularise the Hessian";
            return rep;
        }
        double slope = 0.0, step_max = 0.0;
        for (std::size_t i = 0; i < step.size(); ++i) {
            step[i] = -step[i];
            slope += g[i] * step[i];
            step_max = std::max(step_max, std::abs(step[i]));
        }
        // The scaled residual alone is too weak on fine meshes (stiffness
        // grows like 1/h^2), so also require the Newton correction itself to
        // have reached rounding level.
        if (rep.residual < tol && shift == 0.0 && step_max < kStepTol) {
            for (std::size_t i = 0; i < step.size(); ++i) u[i] += step[i];
            rep.converged = true;
            return rep;
        }

        double alpha = 1.0;
        bool accepted = false;
        std::vector<double> trial = u;
        for (int ls = 0; ls < 50; ++ls) {
            for (std::size_t i = 0; i < nf * F; ++i) trial[i] = u[i] + alpha * step[i];
            const double e1 = energy(p, trial);
            if (std::isfinite(e1)) {
                const bool armijo = e1 <= e0 + 1e-4 * alpha * slope;
                // near convergence energy differences drown in rounding;
                // fall back on the residual
                const bool flat = std::abs(e1 - e0) <= 1e-13 * (1.0 + std::abs(e0)) &&
                                  scaled_residual(p, trial) < rep.residual;
                if (armijo || flat) {
                    u.swap(trial);
                    e0 = e1;
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            rep.message = "line search failed";
            return rep;
        }
    }
    rep.message = "maximum Newton iterations reached";
    return rep;
}

} // namespace vortexlab::detail
