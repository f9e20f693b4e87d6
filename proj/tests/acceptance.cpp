// One line per acceptance criterion; exit status is the number of failures.

#include "oracles.hpp"

#include <vortexlab/error.hpp>
#include <vortexlab/phase.hpp>
#include <vortexlab/profiles.hpp>
#include <vortexlab/spectral.hpp>
#include <vortexlab/stability.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vortexlab;

namespace {

constexpr int kNodes = 2000;
const Grading kGrading = Grading::graded(2.0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// The escaping point shared by criteria 5, 7, 10 and 12: N = 3, W quadratic,
// W~ linear, eps = eps0/2, eta = 2 eta0(eps).
struct Anchor {
    Potential W = Potential::quadratic(), Wt = Potential::linear();
    RadialGrid grid = make_grid(3, kNodes, kGrading);
    double eps0 = 0.0, eps = 0.0, ell = 0.0, eta0 = 0.0, eta = 0.0;
    GLProfile gl{grid, 0.0, {}, {}, 0.0, {}};
    ExtendedProfile esc{grid, 0.0, 0.0, {}, {}, Branch::non_escaping, 0.0, {}, false, false};

    Anchor() {
        eps0 = find_epsilon0(3, W, {0.1, 0.4}, 1e-10, grid).eps0;
        eps = 0.5 * eps0;
        const auto lin = gl_linearization_eigenvalue(3, W, eps, grid);
        gl = lin.profile;
        ell = lin.ell;
        eta0 = vortexlab::eta0(lin, W, Wt);
        eta = 2.0 * eta0;
        esc = solve_extended_profile(gl, W, Wt, eta, Branch::escaping);
    }
};

Anchor& anchor() {
    static Anchor a;
    return a;
}

double gmax(const ExtendedProfile& p) { return *std::max_element(p.g.begin(), p.g.end()); }

Outcome c1() {
    constexpr double tol = 1e-8;
    double worst = 0.0;
    for (int N : {2, 3, 7}) {
        const auto g = make_grid(N, kNodes, kGrading);
        const auto p = solve_gl_profile(N, Potential::zero(), 1.0, g);
        for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(p.f[j] - g[j]));
    }
    return {worst < tol, "max|f-r| over N=2,3,7 = " + fmt(worst) + " (< 1e-8)"};
}

Outcome c2() {
    constexpr double tol3 = 1e-6, tol2 = 1e-3;
    auto lowest = [](int N) {
        const auto g = make_grid(N, kNodes, kGrading);
        return smallest_eigenpair(assemble_radial_operator(N, g, 0.0, std::vector<double>(g.size(), 0.0))).eigenvalue;
    };
    const double e3 = std::abs(lowest(3) - std::numbers::pi * std::numbers::pi);
    const double e2 = std::abs(lowest(2) - oracle::radial_dirichlet_eigenvalue(2, 0.0));
    return {e3 < tol3 && e2 < tol2, "N=3 |lambda-pi^2| = " + fmt(e3) + " (< 1e-6), N=2 |lambda-j01^2| = " + fmt(e2) +
                                        " (< 1e-3)"};
}

Outcome c3() {
    constexpr double bound = 0.25 - 1e-4;
    const auto g = make_grid(7, kNodes, kGrading);
    double lo = 1e300;
    for (double eps : {0.25, 0.5, 1.0}) lo = std::min(lo, gl_linearization_eigenvalue(7, Potential::quadratic(), eps, g).ell);
    return {lo >= bound, "N=7 min l(eps) = " + fmt(lo) + " (>= 0.25 - 1e-4)"};
}

Outcome c4() {
    constexpr double tol = 1e-6;
    auto& A = anchor();
    const auto r = find_epsilon0(3, A.W, {0.1, 0.4}, 1e-10, A.grid);
    bool increasing = true, signs = true;
    double prev = -1e300;
    for (int i = 0; i < 10; ++i) {
        const double eps = 0.05 * std::pow(20.0, i / 9.0);  // 0.05 .. 1
        const double ell = gl_linearization_eigenvalue(3, A.W, eps, A.grid).ell;
        const double v = eps * eps * ell;
        if (!(v > prev)) increasing = false;
        prev = v;
        if ((eps < r.eps0 && !(ell < 0.0)) || (eps > r.eps0 && !(ell > 0.0))) signs = false;
    }
    return {std::abs(r.ell) < tol && increasing && signs, "eps0 = " + fmt(r.eps0) + ", |l(eps0)| = " + fmt(std::abs(r.ell)) +
                                                             " (< 1e-6), eps^2 l increasing: " + (increasing ? "yes" : "no") +
                                                             ", sign change at eps0: " + (signs ? "yes" : "no")};
}

Outcome c5() {
    constexpr double gmin = 1e-3;
    auto& A = anchor();
    const auto& p = A.esc;
    bool inside = true, f_up = true, g_down = true;
    for (std::size_t j = 0; j + 1 < A.grid.size(); ++j) {
        if (!(p.f[j] * p.f[j] + p.g[j] * p.g[j] < 1.0)) inside = false;
        if (!(p.f[j + 1] > p.f[j])) f_up = false;
        if (!(p.g[j + 1] < p.g[j])) g_down = false;
    }
    const double gap = reduced_energy_extended(non_escaping_profile(A.gl, A.eta), A.W, A.Wt, A.eps, A.eta) -
                       reduced_energy_extended(p, A.W, A.Wt, A.eps, A.eta);
    const bool ok = p.branch == Branch::escaping && gmax(p) > gmin && inside && f_up && g_down && gap > 0.0;
    return {ok, "eps = " + fmt(A.eps) + ", eta = " + fmt(A.eta) + ", max g = " + fmt(gmax(p)) +
                    ", f^2+g^2<1: " + (inside ? "yes" : "no") + ", f up: " + (f_up ? "yes" : "no") +
                    ", g down: " + (g_down ? "yes" : "no") + ", energy gap = " + fmt(gap)};
}

Outcome c6() {
    auto& A = anchor();
    SweepOptions o;
    o.confirm_fraction = 1.0;
    const auto eps = parse_range("0.05:0.3:20"), eta = parse_range("0.1:1.5:20");
    std::size_t checked = 0, boundary = 0, esc = 0;
    try {
        const auto d = sweep(3, A.W, A.Wt, eps, eta, A.grid, o);
        for (const auto& row : d.points)
            for (const auto& p : row) {
                if (p.cls == PhaseClass::boundary) {
                    ++boundary;
                    continue;
                }
                if (!p.confirmed) return {false, "unconfirmed point"};
                ++checked;
                esc += p.cls == PhaseClass::escaping;
            }
    } catch (const Error& e) {
        return {false, std::string(e.code()) + ": " + e.what() + " " + e.details()};
    }
    return {checked + boundary == 400 && esc > 0 && esc < checked,
            std::to_string(checked) + " points confirmed (" + std::to_string(esc) + " escaping), " +
                std::to_string(boundary) + " boundary, no disagreement"};
}

Outcome c7() {
    constexpr double positive = 1e-6, qtol = 1e-4;
    auto& A = anchor();
    const double lambda_max = 12.0;
    const auto pd = spectrum_summary(A.esc, A.W, A.Wt, A.eps, A.eta, lambda_max);
    double min_block = 1e300;
    for (const auto& m : pd.modes) min_block = std::min(min_block, m.eigen.eigenvalue);
    const bool a = pd.verdict == Verdict::positive_definite && min_block > positive;

    const auto in = spectrum_summary(non_escaping_profile(A.gl, A.eta), A.W, A.Wt, A.eps, A.eta, lambda_max);
    const double expect = A.ell + 1.0 / (A.eta * A.eta);
    const double qerr = in.q_sector_eigenvalue ? std::abs(*in.q_sector_eigenvalue - expect) : 1e300;
    const bool b = in.verdict == Verdict::indefinite && qerr < qtol && expect < 0.0;

    const auto k = spectrum_summary(non_escaping_profile(A.gl, A.eta0), A.W, A.Wt, A.eps, A.eta0, lambda_max);
    const bool c = k.verdict == Verdict::kernel && k.kernel_dim == 1 && k.kernel_sign_definite && k.kernel_field == "q";

    return {a && b && c, "escaping " + to_string(pd.verdict) + " (min block " + fmt(min_block) + "), non-escaping " +
                             to_string(in.verdict) + " (|q-sector - (l+1/eta^2)| = " + fmt(qerr) + "), eta0 " +
                             to_string(k.verdict) + "(" + std::to_string(k.kernel_dim) + ") field " + k.kernel_field +
                             (k.kernel_sign_definite ? " sign-definite" : " sign-changing")};
}

Outcome c8() {
    constexpr double gap_tol = 0.02, anchor3 = -2.246, anchor_tol = 1e-3;
    const double a = 0.1, b = a * std::exp(-4.0);
    bool ok = true;
    std::ostringstream os;
    for (int N = 3; N <= 6; ++N) {
        const auto e = equator_instability_value(N, Potential::linear(), 1.0, a, b);
        const bool pass = e.closed_form < 0.0 && e.relative_gap < gap_tol && (N != 3 || std::abs(e.closed_form - anchor3) < anchor_tol);
        ok = ok && pass;
        os << "N=" << N << " closed " << fmt(e.closed_form) << " discrete " << fmt(e.discrete) << " gap "
           << fmt(100 * e.relative_gap) << "%" << (pass ? "" : " [over 2%]") << (N < 6 ? "; " : "");
    }
    return {ok, os.str()};
}

Outcome c9() {
    constexpr double ptol = 1e-4;
    const auto Wt = Potential::linear();
    const auto g = make_grid(3, kNodes, kGrading);
    const auto p = solve_sphere_profile(3, Wt, 1.0, g);
    bool up = true;
    for (std::size_t j = 0; j + 1 < g.size(); ++j)
        if (!(p.theta[j + 1] > p.theta[j])) up = false;
    const bool ends = p.theta.front() > 0.0 && p.theta.front() < 1e-3 && std::abs(p.theta.back() - std::numbers::pi / 2) < 1e-14;
    const double poh = pohozaev_check(p, Wt, 1.0);
    const double e = reduced_energy_mm(p, Wt, 1.0), eq = reduced_energy_mm(equator_profile(g, 1.0), Wt, 1.0);
    return {up && ends && poh < ptol && e < eq && std::abs(eq - 1.0) < 1e-9,
            std::string("theta increasing 0 -> pi/2: ") + (up && ends ? "yes" : "no") + ", Pohozaev " + fmt(poh) +
                " (< 1e-4), energy " + fmt(e) + " < equator " + fmt(eq)};
}

Outcome c10() {
    constexpr double tol = 1e-6;
    auto& A = anchor();
    HardyTrial t1, t2;
    t1.s = [](double r) { return r * (1 - r) * (1 - r); };
    t1.ds = [](double r) { return (1 - r) * (1 - 3 * r); };
    t1.q = [](double r) { return (1 - r) * std::cos(r); };
    t1.dq = [](double r) { return -std::cos(r) - (1 - r) * std::sin(r); };
    const double pi = std::numbers::pi;
    t2.s = [pi](double r) { return std::sin(pi * r) * r; };
    t2.ds = [pi](double r) { return pi * std::cos(pi * r) * r + std::sin(pi * r); };
    t2.q = [](double r) { return 1 - r * r * r; };
    t2.dq = [](double r) { return -3 * r * r; };
    const auto h1 = hardy_identity_check(A.esc, A.W, A.Wt, A.eps, A.eta, t1);
    const auto h2 = hardy_identity_check(A.esc, A.W, A.Wt, A.eps, A.eta, t2);
    return {h1.discrepancy < tol && h2.discrepancy < tol,
            "relative discrepancy " + fmt(h1.discrepancy) + ", " + fmt(h2.discrepancy) + " (< 1e-6)"};
}

Outcome c11() {
    constexpr double tol = 1e-6;
    const auto W = Potential::quadratic();
    const auto g = make_grid(3, kNodes, kGrading);
    const double eps = 0.2, eps_t = 0.1;
    const auto a = solve_gl_profile(3, W, eps, g), b = solve_gl_profile(3, W, eps_t, g);
    double worst = 1e300;
    for (int i = 0; i <= 4000; ++i) {
        const double r = 5.0 * i / 4000.0;  // eps r <= 1 and eps_t r <= 1
        worst = std::min(worst, interpolate(g, a.f, eps * r) - interpolate(g, b.f, eps_t * r));
    }
    return {worst >= -tol, "min f_0.2(0.2r) - f_0.1(0.1r) = " + fmt(worst) + " (>= -1e-6)"};
}

Outcome c12() {
    constexpr double tol = 1e-7;
    auto& A = anchor();
    const auto& g = A.grid;
    ExtendedGuess g1, g2;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double r = g[j];
        g1.f.push_back(r * r);
        g1.g.push_back(0.3 * (1 - r));
        g2.f.push_back(A.gl.f[j]);
        g2.g.push_back(0.8 * std::cos(0.5 * std::numbers::pi * r));
    }
    const auto p1 = solve_extended_profile(A.gl, A.W, A.Wt, A.eta, Branch::escaping, {}, g1);
    const auto p2 = solve_extended_profile(A.gl, A.W, A.Wt, A.eta, Branch::escaping, {}, g2);
    double d = 0.0;
    for (const auto* p : {&p1, &p2})
        for (std::size_t j = 0; j < g.size(); ++j)
            d = std::max({d, std::abs(p->f[j] - A.esc.f[j]), std::abs(p->g[j] - A.esc.g[j])});
    const bool all = p1.branch == Branch::escaping && p2.branch == Branch::escaping;
    return {all && d < tol, "max difference between three starts = " + fmt(d) + " (< 1e-7)"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "zero-potential exactness", 3, c1},      {2, "Laplacian eigenvalue anchor", 5, c2},
        {3, "high-dimension positivity", 30, c3},    {4, "threshold and monotonicity", 60, c4},
        {5, "escaping existence and energy gap", 60, c5}, {6, "phase iff", 180, c6},
        {7, "stability verdicts", 60, c7},           {8, "equator instability", 10, c8},
        {9, "sphere profile and Pohozaev", 30, c9},  {10, "Hardy identity", 10, c10},
        {11, "scaling comparison", 10, c11},         {12, "uniqueness by convergence", 30, c12},
    };
    int failures = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const Error& e) {
            o = {false, std::string("threw ") + e.code() + ": " + e.what()};
        } catch (const std::exception& e) {
            o = {false, std::string("threw ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("[%s] %2d %s: %s [%.2fs / %.0fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), s,
                    c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
    return failures;
}
