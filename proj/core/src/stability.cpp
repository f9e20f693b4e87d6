#include "vortexlab/stability.hpp"

#include "vortexlab/error.hpp"
#include "vortexlab/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>

namespace vortexlab {

namespace {

using Source = ModeBlock::Source;

constexpr double kConvergedResidual = 1e-6;

void check_profile(const RadialGrid& grid, std::size_t values, double residual_norm) {
    if (values != grid.size()) throw Error(errc::grid_mismatch, "profile does not match its grid");
    if (!(residual_norm <= kConvergedResidual))
        throw Error(errc::unconverged, "profile residual " + std::to_string(residual_norm) + " is above 1e-6");
}

double& at(std::vector<double>& c, int F, std::size_t j, int a, int b) {
    return c[(j * F + a) * F + b];
}
double at(const std::vector<double>& c, int F, std::size_t j, int a, int b) {
    return c[(j * F + a) * F + b];
}

ModeBlock skeleton(const RadialGrid& grid, Source src, double lambda, std::vector<std::string> fields,
                   std::vector<double> sw, std::vector<double> mw) {
    ModeBlock b{grid.dimension(), harmonic_degree(grid.dimension(), lambda), lambda, src, std::move(fields), grid,
                std::move(sw), std::move(mw), {}, {}, {}, {}, {}, {}};
    const std::size_t F = b.fields.size();
    b.c2.assign(grid.size() * F * F, 0.0);
    b.c0.assign(grid.size() * F * F, 0.0);
    return b;
}

// Fills the boundary flags, the dof numbering and the pencil from c2/c0.
void assemble(ModeBlock& b) {
    const int N = b.N;
    const int F = b.field_count();
    const auto& grid = b.grid;
    const std::size_t n = grid.size();

    b.dirichlet_origin.assign(F, false);
    for (int a = 0; a < F; ++a)
        for (std::size_t j = 0; j < n && !b.dirichlet_origin[a]; ++j)
            if (at(b.c2, F, j, a, a) != 0.0) b.dirichlet_origin[a] = true;

    std::vector<long> index(n * F, -1);
    b.dofs.clear();
    for (std::size_t j = 0; j + 1 < n; ++j)
        for (int a = 0; a < F; ++a) {
            if (j == 0 && b.dirichlet_origin[a]) continue;
            index[j * F + a] = static_cast<long>(b.dofs.size());
            b.dofs.push_back({j, a});
        }

    const auto k = cell_stiffness(grid, N - 1);
    auto m0 = lumped_masses(grid, N - 1, false);
    const auto m2 = lumped_masses(grid, N - 3, false);
    m0[0] += moment(N - 1, 0.0, grid[0]);  // only natural fields survive at node 0

    b.A = SymBand(b.dofs.size(), static_cast<std::size_t>(2 * F - 1));
    b.M.assign(b.dofs.size(), 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (int a = 0; a < F; ++a) {
            const long ia = index[j * F + a];
            if (ia < 0) continue;
            b.M[ia] = b.mass_weight[a] * m0[j];
            for (int c = 0; c <= a; ++c) {
                const long ic = index[j * F + c];
                if (ic < 0) continue;
                const double v = m2[j] * at(b.c2, F, j, a, c) + m0[j] * at(b.c0, F, j, a, c);
                if (v != 0.0) b.A.add(static_cast<std::size_t>(std::max(ia, ic)), static_cast<std::size_t>(std::min(ia, ic)), v);
            }
        }
        for (int a = 0; a < F; ++a) {
            const double kw = b.stiffness_weight[a] * k[j];
            const long i0 = index[j * F + a];
            const long i1 = j + 2 < n ? index[(j + 1) * F + a] : -1;
            if (i0 >= 0) b.A.add(i0, i0, kw);
            if (i1 >= 0) b.A.add(i1, i1, kw);
            if (i0 >= 0 && i1 >= 0) b.A.add(i1, i0, -kw);
        }
    }
}

ModeBlock coarsened(const ModeBlock& fine) {
    ModeBlock b = fine;
    b.grid = fine.grid.coarsened();
    const auto idx = fine.grid.coarse_indices();
    const int F = fine.field_count();
    const std::size_t FF = static_cast<std::size_t>(F * F);
    b.c2.assign(idx.size() * FF, 0.0);
    b.c0.assign(idx.size() * FF, 0.0);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t e = 0; e < FF; ++e) {
            b.c2[i * FF + e] = fine.c2[idx[i] * FF + e];
            b.c0[i * FF + e] = fine.c0[idx[i] * FF + e];
        }
    assemble(b);
    return b;
}

std::vector<double> to_dofs(const ModeBlock& b, const std::vector<std::vector<double>>& trial) {
    if (trial.size() != b.fields.size()) throw Error(errc::invalid_argument, "trial needs one vector per field");
    for (const auto& t : trial)
        if (t.size() != b.grid.size()) throw Error(errc::grid_mismatch, "trial does not match the grid");
    std::vector<double> x(b.dofs.size());
    for (std::size_t i = 0; i < b.dofs.size(); ++i) x[i] = trial[b.dofs[i].field][b.dofs[i].node];
    return x;
}

struct ExtendedSample {
    double P, Wpp, T1, T2;
};

ExtendedSample extended_sample(const Potential& W, const Potential& Wt, double eps, double eta, double f,
                               double g) {
    const double ie2 = 1.0 / (eps * eps), ih2 = 1.0 / (eta * eta);
    const double t = 1.0 - f * f - g * g;
    return {W.eval_clamped(t, 1) * ie2, W.eval_clamped(t, 2) * ie2, Wt.eval_clamped(g * g, 1) * ih2,
            Wt.eval_clamped(g * g, 2) * ih2};
}

ModeBlock extended_block(const RadialGrid& grid, const std::vector<double>& f, const std::vector<double>* g,
                         const Potential& W, const Potential* Wt, double eps, double eta, double lambda) {
    const int N = grid.dimension();
    const bool with_q = g != nullptr;
    const bool with_psi = lambda > 0.0;
    const Source src = with_q ? Source::extended : Source::gl;

    std::vector<std::string> names{"s"};
    std::vector<double> w{1.0};
    if (with_psi) {
        names.push_back("psi");
        w.push_back(lambda);
    }
    if (with_q) {
        names.push_back("q");
        w.push_back(1.0);
    }
    ModeBlock b = skeleton(grid, src, lambda, names, w, w);
    const int F = b.field_count();
    const int S = 0, PSI = with_psi ? 1 : -1, Q = with_q ? F - 1 : -1;

    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double fj = f[j], gj = with_q ? (*g)[j] : 0.0;
        const auto c = with_q ? extended_sample(W, *Wt, eps, eta, fj, gj)
                              : extended_sample(W, Potential::zero(), eps, 1.0, fj, 0.0);
        at(b.c2, F, j, S, S) = lambda + N - 1.0;
        at(b.c0, F, j, S, S) = -c.P + 2.0 * c.Wpp * fj * fj;
        if (with_psi) {
            at(b.c2, F, j, PSI, PSI) = lambda * (lambda - N + 3.0);
            at(b.c2, F, j, PSI, S) = at(b.c2, F, j, S, PSI) = -2.0 * lambda;
            at(b.c0, F, j, PSI, PSI) = -lambda * c.P;
        }
        if (with_q) {
            at(b.c2, F, j, Q, Q) = lambda;
            at(b.c0, F, j, Q, Q) = -c.P + c.T1 + 2.0 * c.Wpp * gj * gj + 2.0 * c.T2 * gj * gj;
            at(b.c0, F, j, Q, S) = at(b.c0, F, j, S, Q) = 2.0 * c.Wpp * fj * gj;
        }
    }
    assemble(b);
    return b;
}

} // namespace

// ---------------------------------------------------------------- harmonics

double harmonic_eigenvalue(int N, int k) { return static_cast<double>(k) * (k + N - 2); }

int harmonic_degree(int N, double lambda) {
    if (N < 2) throw Error(errc::invalid_argument, "N must be >= 2");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw Error(errc::invalid_lambda, "lambda must be a sphere eigenvalue k(k+N-2)");
    const double k = 0.5 * (-(N - 2) + std::sqrt((N - 2.0) * (N - 2.0) + 4.0 * lambda));
    const int kr = static_cast<int>(std::lround(k));
    if (kr < 0 || std::abs(harmonic_eigenvalue(N, kr) - lambda) > 1e-9 * (1.0 + lambda))
        throw Error(errc::invalid_lambda,
                    "lambda = " + std::to_string(lambda) + " is not of the form k(k+N-2) for N = " + std::to_string(N));
    return kr;
}

long long harmonic_multiplicity(int N, int k) {
    auto binom = [](long long n, long long r) -> long long {
        if (r < 0 || n < r) return 0;
        long long v = 1;
        for (long long i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    return binom(N + k - 1, k) - binom(N + k - 3, k - 2);
}

// ---------------------------------------------------------------- blocks

ModeBlock mode_block(const ExtendedProfile& p, const Potential& W, const Potential& Wt, double eps, double eta,
                     double lambda) {
    check_profile(p.grid, p.f.size(), p.residual_norm);
    if (p.g.size() != p.grid.size()) throw Error(errc::grid_mismatch, "profile does not match its grid");
    return extended_block(p.grid, p.f, &p.g, W, &Wt, eps, eta, lambda);
}

ModeBlock mode_block(const GLProfile& p, const Potential& W, double eps, double lambda) {
    check_profile(p.grid, p.f.size(), p.residual_norm);
    return extended_block(p.grid, p.f, nullptr, W, nullptr, eps, 1.0, lambda);
}

ModeBlock mode_block(const SphereProfile& p, const Potential& Wt, double eta, double lambda) {
    check_profile(p.grid, p.theta.size(), p.residual_norm);
    const auto& grid = p.grid;
    const int N = grid.dimension();
    const bool with_psi = lambda > 0.0;
    std::vector<std::string> names{"tau"};
    std::vector<double> w{1.0};
    if (with_psi) {
        names.push_back("psi");
        w.push_back(lambda);
    }
    ModeBlock b = skeleton(grid, Source::sphere, lambda, names, w, w);
    const int F = b.field_count();
    const auto dth = nodal_derivative(grid, p.theta, 5);
    const double ih2 = 1.0 / (eta * eta);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double s = std::sin(p.theta[j]), c = std::cos(p.theta[j]);
        const double T1 = Wt.eval_clamped(c * c, 1) * ih2, T2 = Wt.eval_clamped(c * c, 2) * ih2;
        at(b.c2, F, j, 0, 0) = (lambda + N - 1.0) * c * c + lambda * s * s - (N - 1.0) * s * s;
        at(b.c0, F, j, 0, 0) = T1 * (s * s - c * c) + 2.0 * T2 * s * s * c * c;
        if (with_psi) {
            at(b.c2, F, j, 1, 1) = lambda * (lambda - N + 3.0) - lambda * (N - 1.0) * s * s;
            at(b.c2, F, j, 0, 1) = at(b.c2, F, j, 1, 0) = -2.0 * lambda * c;
            at(b.c0, F, j, 1, 1) = -lambda * (dth[j] * dth[j] + T1 * c * c);
        }
    }
    assemble(b);
    return b;
}

ModeBlock restrict_fields(const ModeBlock& b, const std::vector<std::string>& keep) {
    std::vector<int> sel;
    for (const auto& name : keep) {
        const auto it = std::find(b.fields.begin(), b.fields.end(), name);
        if (it == b.fields.end()) throw Error(errc::invalid_argument, "block has no field '" + name + "'");
        sel.push_back(static_cast<int>(it - b.fields.begin()));
    }
    const int F = b.field_count(), G = static_cast<int>(sel.size());
    ModeBlock r = b;
    r.fields.clear();
    r.stiffness_weight.clear();
    r.mass_weight.clear();
    for (int a : sel) {
        r.fields.push_back(b.fields[a]);
        r.stiffness_weight.push_back(b.stiffness_weight[a]);
        r.mass_weight.push_back(b.mass_weight[a]);
    }
    const std::size_t n = b.grid.size();
    r.c2.assign(n * G * G, 0.0);
    r.c0.assign(n * G * G, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (int a = 0; a < G; ++a)
            for (int c = 0; c < G; ++c) {
                at(r.c2, G, j, a, c) = at(b.c2, F, j, sel[a], sel[c]);
                at(r.c0, G, j, a, c) = at(b.c0, F, j, sel[a], sel[c]);
            }
    assemble(r);
    return r;
}

double mode_form(const ModeBlock& b, const std::vector<std::vector<double>>& trial) {
    return b.A.quadratic_form(to_dofs(b, trial));
}

double mode_form_direct(const ModeBlock& b, const std::vector<std::vector<double>>& trial) {
    // 4-point Gauss-Legendre on every cell and half cell instead of the exact
    // moments used by the assembly.
    static constexpr std::array<double, 4> gx{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                              0.8611363115940526};
    static constexpr std::array<double, 4> gw{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                              0.3478548451374538};
    auto gauss = [&](int p, double lo, double hi) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[i];
            s += gw[i] * std::pow(r, p);
        }
        return 0.5 * (hi - lo) * s;
    };

    const int N = b.N, F = b.field_count();
    const auto& r = b.grid.nodes();
    const std::size_t n = r.size();
    // zero the constrained values
    std::vector<std::vector<double>> u(F, std::vector<double>(n, 0.0));
    const auto x = to_dofs(b, trial);
    for (std::size_t i = 0; i < b.dofs.size(); ++i) u[b.dofs[i].field][b.dofs[i].node] = x[i];

    double q = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double h = r[j + 1] - r[j];
        const double wcell = gauss(N - 1, r[j], r[j + 1]) / (h * h);
        for (int a = 0; a < F; ++a) {
            const double d = u[a][j + 1] - u[a][j];
            q += b.stiffness_weight[a] * wcell * d * d;
        }
        const double lo = j == 0 ? r[0] : 0.5 * (r[j - 1] + r[j]);
        const double hi = 0.5 * (r[j] + r[j + 1]);
        double m0 = gauss(N - 1, lo, hi), m2 = gauss(N - 3, lo, hi);
        if (j == 0) m0 += gauss(N - 1, 0.0, r[0]);
        for (int a = 0; a < F; ++a)
            for (int c = 0; c < F; ++c)
                q += u[a][j] * u[c][j] * (m2 * at(b.c2, F, j, a, c) + m0 * at(b.c0, F, j, a, c));
    }
    return q;
}

ModeEigen mode_min_eigenvalue(const ModeBlock& b) {
    if (b.dofs.empty()) throw Error(errc::eigensolver, "block has no unknowns");
    const auto fine = smallest_pencil_eigen(b.A, b.M);
    const ModeBlock cb = coarsened(b);
    const auto crs = smallest_pencil_eigen(cb.A, cb.M);

    ModeEigen out;
    out.discrete_eigenvalue = fine.value;
    out.coarse_eigenvalue = crs.value;
    out.eigenvalue = (4.0 * fine.value - crs.value) / 3.0;
    out.residual = fine.residual;
    const int F = b.field_count();
    out.vector.assign(F, std::vector<double>(b.grid.size(), 0.0));
    // sign: positive M-weighted mean of the field carrying most of the norm
    std::vector<double> share(F, 0.0), mean(F, 0.0);
    for (std::size_t i = 0; i < b.dofs.size(); ++i) {
        share[b.dofs[i].field] += b.M[i] * fine.vector[i] * fine.vector[i];
        mean[b.dofs[i].field] += b.M[i] * fine.vector[i];
    }
    const int dom = static_cast<int>(std::max_element(share.begin(), share.end()) - share.begin());
    const double sign = mean[dom] >= 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < b.dofs.size(); ++i)
        out.vector[b.dofs[i].field][b.dofs[i].node] = sign * fine.vector[i];
    return out;
}

// ---------------------------------------------------------------- identities

HardyCheck hardy_identity_check(const ExtendedProfile& p, const Potential& W, const Potential& Wt, double eps,
                                double eta, const HardyTrial& trial) {
    check_profile(p.grid, p.f.size(), p.residual_norm);
    const auto& grid = p.grid;
    const int N = grid.dimension();
    const std::size_t n = grid.size();
    if (p.g.size() != n) throw Error(errc::grid_mismatch, "profile does not match its grid");
    if (!trial.s || !trial.ds || !trial.q || !trial.dq) throw Error(errc::invalid_argument, "trial is incomplete");
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (!(p.f[j] > 0.0 && p.g[j] > 0.0))
            throw Error(errc::invalid_argument, "the factored form divides by f and g; needs an escaping profile");

    const auto df = nodal_derivative(grid, p.f, 5);
    const auto dg = nodal_derivative(grid, p.g, 5);
    std::vector<double> direct(n), direct_c(n), factored(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = grid[j], f = p.f[j], g = p.g[j];
        const double s = trial.s(r), ds = trial.ds(r), q = trial.q(r), dq = trial.dq(r);
        const auto c = extended_sample(W, Wt, eps, eta, f, g);
        const double common = 2.0 * c.Wpp * (f * s + g * q) * (f * s + g * q) + 2.0 * c.T2 * g * g * q * q;
        direct[j] = ds * ds + dq * dq - c.P * (s * s + q * q) + c.T1 * q * q + common;
        direct_c[j] = (N - 1.0) * s * s;  // against r^{N-3}
        // f^2 ((s/f)')^2 = (s' - s f'/f)^2. At r = 1 the trial and g vanish
        // while q/g stays smooth, so g (q/g)' -> 0 there.
        const double a = ds - s * df[j] / f;
        const double bq = g > 0.0 ? dq - q * dg[j] / g : 0.0;
        factored[j] = a * a + bq * bq + common;
    }
    HardyCheck out;
    out.direct = grid.integrate(direct) + grid.integrate(direct_c, N - 3);
    out.factored = grid.integrate(factored);
    out.discrepancy = std::abs(out.direct - out.factored) / std::max({std::abs(out.direct), std::abs(out.factored), 1e-300});
    return out;
}

bool divfree_certificate(int N, double alpha) {
    if (N < 2) throw Error(errc::invalid_argument, "N must be >= 2");
    if (N == 2) return true;
    return alpha > -(N - 2.0) && alpha < 0.0 && (alpha + 1.0) * (alpha + N - 3.0) < N - 3.0;
}

EquatorInstability equator_instability_value(int N, const Potential& Wt, double eta, double a, double b,
                                             const std::optional<RadialGrid>& grid_opt) {
    if (N < 2) throw Error(errc::invalid_argument, "N must be >= 2");
    if (!(eta > 0.0)) throw Error(errc::invalid_argument, "eta must be > 0");
    if (!(b > 0.0 && b < a && a < 1.0)) throw Error(errc::invalid_argument, "need 0 < b < a < 1");
    const RadialGrid grid = grid_opt ? *grid_opt : make_grid(N, 4000, Grading::graded(2.0));
    if (grid.dimension() != N) throw Error(errc::grid_mismatch, "grid dimension differs from N");

    const double L = std::log(a / b);
    const double k = std::numbers::pi / L;
    EquatorInstability out;
    out.closed_form = 0.5 * L * (k * k + (N * N - 8.0 * N + 8.0) / 4.0 + Wt.eval(0.0, 1) * a * a / (eta * eta));

    const auto eq = equator_profile(grid, eta);
    const auto block = mode_block(eq, Wt, eta, 0.0);
    std::vector<double> tau(grid.size(), 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double r = grid[j];
        if (r > b && r < a) tau[j] = -std::sin(k * std::log(r / b)) * std::pow(r, -(N - 2) / 2.0);  // tau = -q
    }
    out.discrete = mode_form(block, {tau});
    out.relative_gap = std::abs(out.discrete - out.closed_form) / std::abs(out.closed_form);
    return out;
}

// ---------------------------------------------------------------- summary

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::positive_definite: return "PositiveDefinite";
    case Verdict::kernel: return "Kernel";
    case Verdict::indefinite: return "Indefinite";
    case Verdict::uncertified: return "Uncertified";
    }
    return "?";
}

namespace {

std::vector<int> degrees_up_to(int N, double lambda_max) {
    if (!(lambda_max > 0.0)) lambda_max = 3.0 * (N + 1);
    std::vector<int> ks;
    for (int k = 0; harmonic_eigenvalue(N, k) <= lambda_max * (1.0 + 1e-12); ++k) ks.push_back(k);
    return ks;
}

template <class MakeBlock>
StabilityReport summarise(int N, const std::vector<int>& ks, MakeBlock make, double ell, bool certificate,
                          double alpha) {
    StabilityReport rep;
    rep.N = N;
    rep.ell = ell;
    rep.band = 1e-4 * (1.0 + std::abs(ell));
    rep.alpha = alpha;
    rep.certificate = certificate;

    // blocks are independent; joined in order
    std::vector<std::future<ModeResult>> jobs;
    for (int k : ks)
        jobs.push_back(std::async(std::launch::async, [&, k] {
            const double lambda = harmonic_eigenvalue(N, k);
            return ModeResult{k, lambda, harmonic_multiplicity(N, k), mode_min_eigenvalue(make(lambda))};
        }));
    for (auto& j : jobs) rep.modes.push_back(j.get());

    bool negative = false;
    for (std::size_t i = 0; i < rep.modes.size(); ++i) {
        const double e = rep.modes[i].eigen.eigenvalue;
        if (e < -rep.band) negative = true;
        if (std::abs(e) <= rep.band) {
            rep.kernel_dim += static_cast<int>(rep.modes[i].multiplicity);
            if (!rep.kernel_mode) rep.kernel_mode = i;
        }
    }
    for (std::size_t i = 2; i < rep.modes.size(); ++i) {
        const double a = rep.modes[i - 1].eigen.discrete_eigenvalue, b = rep.modes[i].eigen.discrete_eigenvalue;
        if (b < a - 1e-9 * (1.0 + std::abs(a))) rep.lambda_monotone = false;
    }
    if (negative)
        rep.verdict = Verdict::indefinite;
    else if (rep.kernel_dim > 0)
        rep.verdict = Verdict::kernel;
    else if (!certificate)
        rep.verdict = Verdict::uncertified;
    else
        rep.verdict = Verdict::positive_definite;
    return rep;
}

void attach_kernel(StabilityReport& rep, const std::function<ModeBlock(double)>& make) {
    if (!rep.kernel_mode) return;
    const auto& m = rep.modes[*rep.kernel_mode];
    const ModeBlock b = make(m.lambda);
    int dom = 0;
    double best = -1.0;
    for (int a = 0; a < b.field_count(); ++a) {
        double s = 0.0;
        for (double v : m.eigen.vector[a]) s += v * v;
        if (s > best) {
            best = s;
            dom = a;
        }
    }
    rep.kernel_field = b.fields[dom];
    rep.kernel_function = m.eigen.vector[dom];
    double vmax = 0.0;
    for (double v : rep.kernel_function) vmax = std::max(vmax, std::abs(v));
    bool pos = false, neg = false;
    for (double v : rep.kernel_function) {
        if (v > 1e-8 * vmax) pos = true;
        if (v < -1e-8 * vmax) neg = true;
    }
    rep.kernel_sign_definite = !(pos && neg);
}

double linearised_ell(const RadialGrid& grid, const std::vector<double>& f, const std::vector<double>* g,
                      const Potential& W, double eps) {
    std::vector<double> V(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double gj = g ? (*g)[j] : 0.0;
        V[j] = -W.eval_clamped(1.0 - f[j] * f[j] - gj * gj, 1) / (eps * eps);
    }
    return smallest_eigenpair(assemble_radial_operator(grid.dimension(), grid, 0.0, std::move(V))).eigenvalue;
}

bool increasing(const RadialGrid& grid, const std::vector<double>& f) {
    const auto d = nodal_derivative(grid, f, 5);
    for (double x : d)
        if (!(x > 0.0)) return false;
    return true;
}

} // namespace

StabilityReport spectrum_summary(const ExtendedProfile& p, const Potential& W, const Potential& Wt, double eps,
                                 double eta, double lambda_max) {
    check_profile(p.grid, p.f.size(), p.residual_norm);
    const int N = p.grid.dimension();
    const double alpha = -(N - 2) / 2.0;
    const bool cert = divfree_certificate(N, alpha) && (N == 2 || increasing(p.grid, p.f));
    const double ell = linearised_ell(p.grid, p.f, &p.g, W, eps);
    std::function<ModeBlock(double)> make = [&](double lambda) { return mode_block(p, W, Wt, eps, eta, lambda); };
    auto rep = summarise(N, degrees_up_to(N, lambda_max), make, ell, cert, alpha);
    attach_kernel(rep, make);
    const bool flat = std::all_of(p.g.begin(), p.g.end(), [](double x) { return x == 0.0; });
    if (flat) rep.q_sector_eigenvalue = mode_min_eigenvalue(restrict_fields(make(0.0), {"q"})).eigenvalue;
    return rep;
}

StabilityReport spectrum_summary(const GLProfile& p, const Potential& W, double eps, double lambda_max) {
    check_profile(p.grid, p.f.size(), p.residual_norm);
    const int N = p.grid.dimension();
    const double alpha = -(N - 2) / 2.0;
    const bool cert = divfree_certificate(N, alpha) && (N == 2 || increasing(p.grid, p.f));
    const double ell = linearised_ell(p.grid, p.f, nullptr, W, eps);
    std::function<ModeBlock(double)> make = [&](double lambda) { return mode_block(p, W, eps, lambda); };
    auto rep = summarise(N, degrees_up_to(N, lambda_max), make, ell, cert, alpha);
    attach_kernel(rep, make);
    return rep;
}

StabilityReport spectrum_summary(const SphereProfile& p, const Potential& Wt, double eta, double lambda_max) {
    check_profile(p.grid, p.theta.size(), p.residual_norm);
    const int N = p.grid.dimension();
    const double alpha = -(N - 2) / 2.0;
    bool mono = true;
    if (N > 2) {
        // the in-plane component sin(theta) must increase: theta' cos(theta) > 0
        const auto d = nodal_derivative(p.grid, p.theta, 5);
        for (std::size_t j = 0; j + 1 < p.grid.size(); ++j)
            if (!(d[j] * std::cos(p.theta[j]) > 0.0)) mono = false;
    }
    const bool cert = divfree_certificate(N, alpha) && mono;
    std::function<ModeBlock(double)> make = [&](double lambda) { return mode_block(p, Wt, eta, lambda); };
    auto rep = summarise(N, degrees_up_to(N, lambda_max), make, 0.0, cert, alpha);
    attach_kernel(rep, make);
    return rep;
}

} // namespace vortexlab
