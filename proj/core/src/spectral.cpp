#include "vortexlab/spectral.hpp"

#include "vortexlab/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace vortexlab {

namespace {

SLOperator assemble(const RadialGrid& grid, double mu, std::vector<double> V) {
    const int N = grid.dimension();
    const std::size_t n = grid.size();
    const bool dirichlet_origin = mu > 0.0;
    const auto k = cell_stiffness(grid, N - 1);
    const auto m = lumped_masses(grid, N - 1, !dirichlet_origin);
    std::vector<double> m2;
    if (mu > 0.0) m2 = lumped_masses(grid, N - 3, false);

    SLOperator op{grid, mu, std::move(V), {}, {}, {}};
    const std::size_t first = dirichlet_origin ? 1 : 0;
    for (std::size_t j = first; j + 1 < n; ++j) op.dofs.push_back(j);
    const std::size_t nd = op.dofs.size();
    op.A = SymBand(nd, 1);
    op.M.resize(nd);
    for (std::size_t i = 0; i < nd; ++i) {
        const std::size_t j = op.dofs[i];
        double d = m[j] * op.V[j] + k[j];
        if (j > 0) d += k[j - 1];
        if (mu > 0.0) d += mu * m2[j];
        op.A.add(i, i, d);
        if (i > 0) op.A.add(i, i - 1, -k[j - 1]);
        op.M[i] = m[j];
    }
    return op;
}

} // namespace

SLOperator assemble_radial_operator(int N, const RadialGrid& grid, double mu, std::vector<double> V) {
    if (grid.dimension() != N) throw Error(errc::grid_mismatch, "grid dimension differs from N");
    if (!(mu >= 0.0)) throw Error(errc::invalid_argument, "angular coefficient mu must be >= 0");
    if (V.size() != grid.size()) throw Error(errc::grid_mismatch, "potential samples do not match the grid");
    for (double x : V)
        if (!std::isfinite(x)) throw Error(errc::invalid_argument, "potential samples must be finite");
    return assemble(grid, mu, std::move(V));
}

EigenPair smallest_eigenpair(const SLOperator& op) {
    const auto fine = smallest_pencil_eigen(op.A, op.M);

    const RadialGrid coarse = op.grid.coarsened();
    std::vector<double> Vc;
    for (std::size_t j : op.grid.coarse_indices()) Vc.push_back(op.V[j]);
    const auto cop = assemble(coarse, op.mu, std::move(Vc));
    const auto crs = smallest_pencil_eigen(cop.A, cop.M);

    EigenPair out;
    out.discrete_eigenvalue = fine.value;
    out.coarse_eigenvalue = crs.value;
    out.eigenvalue = (4.0 * fine.value - crs.value) / 3.0;
    out.residual = fine.residual;
    out.eigenfunction.assign(op.grid.size(), 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < op.dofs.size(); ++i) s += op.M[i] * fine.vector[i];
    const double sign = s >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < op.dofs.size(); ++i) out.eigenfunction[op.dofs[i]] = sign * fine.vector[i];
    return out;
}

GLLinearization gl_linearization_eigenvalue(const GLProfile& profile, const Potential& W) {
    const auto& grid = profile.grid;
    std::vector<double> V(grid.size());
    const double ie2 = 1.0 / (profile.eps * profile.eps);
    for (std::size_t j = 0; j < grid.size(); ++j) V[j] = -W.eval(1.0 - profile.f[j] * profile.f[j], 1) * ie2;
    const auto op = assemble_radial_operator(grid.dimension(), grid, 0.0, std::move(V));
    auto pair = smallest_eigenpair(op);
    const double ell = pair.eigenvalue;
    return {ell, std::move(pair), profile};
}

GLLinearization gl_linearization_eigenvalue(int N, const Potential& W, double eps, const RadialGrid& grid,
                                            const SolverOptions& opts) {
    return gl_linearization_eigenvalue(solve_gl_profile(N, W, eps, grid, opts), W);
}

bool has_threshold(int N, const Potential& W) { return N >= 2 && N <= 6 && W.eval(1.0, 1) > 0.0; }

Epsilon0 find_epsilon0(int N, const Potential& W, std::pair<double, double> bracket, double tol,
                       const RadialGrid& grid, const SolverOptions& opts) {
    if (N >= 7) throw Error(errc::no_threshold, "l(eps) > 0 for every eps when N >= 7");
    if (!(W.eval(1.0, 1) > 0.0)) throw Error(errc::no_threshold, "l(eps) = lambda_1(-Delta) > 0 when W'(1) = 0");
    auto [lo, hi] = bracket;
    if (!(lo > 0.0 && hi > lo)) throw Error(errc::bracket, "bracket must satisfy 0 < eps_lo < eps_hi");

    Epsilon0 out;
    auto ell = [&](double e) {
        const double l = gl_linearization_eigenvalue(N, W, e, grid, opts).ell;
        out.history.emplace_back(e, l);
        return l;
    };
    const double llo = ell(lo), lhi = ell(hi);
    auto history_json = [&] {
        std::ostringstream os;
        os.precision(17);
        os << '[';
        for (std::size_t i = 0; i < out.history.size(); ++i)
            os << (i ? "," : "") << '[' << out.history[i].first << ',' << out.history[i].second << ']';
        os << ']';
        return os.str();
    };
    if (!(llo < 0.0 && lhi > 0.0))
        throw Error(errc::bracket, "bracket does not straddle a sign change of l(eps)", history_json());

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double l = ell(mid);
        out.iterations = it + 1;
        if (std::abs(l) < tol) {
            out.eps0 = mid;
            out.ell = l;
            return out;
        }
        if (l < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    throw Error(errc::nonconvergence, "bisection for eps0 did not reach |l| < tol", history_json());
}

} // namespace vortexlab
