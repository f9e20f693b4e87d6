#include "vortexlab/phase.hpp"

#include "vortexlab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

namespace vortexlab {

std::string to_string(PhaseClass c) {
    switch (c) {
    case PhaseClass::escaping: return "Escaping";
    case PhaseClass::non_escaping: return "NonEscaping";
    case PhaseClass::boundary: return "Boundary";
    }
    return "?";
}

namespace {

bool has_region(int N, const Potential& W) { return N <= 6 && W.eval(1.0, 1) > 0.0; }

} // namespace

double eta0(const GLLinearization& lin, const Potential& W, const Potential& Wt) {
    const int N = lin.profile.grid.dimension();
    if (!has_region(N, W))
        throw Error(errc::no_escaping_region, N >= 7 ? "no escaping solutions for N >= 7"
                                                     : "no escaping solutions when W'(1) = 0");
    if (!(lin.ell < 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "{\"eps\":" << lin.profile.eps << ",\"ell\":" << lin.ell << '}';
        throw Error(errc::out_of_range, "eta0 needs eps < eps0 (l(eps) < 0)", os.str());
    }
    return std::sqrt(Wt.eval(0.0, 1) / std::abs(lin.ell));
}

double eta0(int N, const Potential& W, const Potential& Wt, double eps, const RadialGrid& grid,
            const SolverOptions& opts) {
    if (!has_region(N, W))
        throw Error(errc::no_escaping_region, N >= 7 ? "no escaping solutions for N >= 7"
                                                     : "no escaping solutions when W'(1) = 0");
    return eta0(gl_linearization_eigenvalue(N, W, eps, grid, opts), W, Wt);
}

PhasePoint classify_point(const GLLinearization& lin, const Potential& W, const Potential& Wt, double eta,
                          bool confirm, const SolverOptions& opts) {
    if (!(eta > 0.0)) throw Error(errc::invalid_argument, "eta must be > 0");
    PhasePoint pt;
    pt.eps = lin.profile.eps;
    pt.eta = eta;
    pt.ell = lin.ell;
    pt.criterion = lin.ell + Wt.eval(0.0, 1) / (eta * eta);
    pt.band = 1e-6 * (1.0 + std::abs(lin.ell)) + std::abs(lin.pair.discrete_eigenvalue - lin.ell);
    if (pt.criterion < -pt.band)
        pt.cls = PhaseClass::escaping;
    else if (pt.criterion > pt.band)
        pt.cls = PhaseClass::non_escaping;
    else
        pt.cls = PhaseClass::boundary;
    if (!confirm) return pt;

    const auto prof = solve_extended_profile(lin.profile, W, Wt, eta, Branch::escaping, opts);
    pt.solver_branch = prof.branch;
    for (double g : prof.g) pt.solver_gmax = std::max(pt.solver_gmax, g);
    if (pt.cls == PhaseClass::boundary) return pt;
    const bool solver_escapes = prof.branch == Branch::escaping;
    if (solver_escapes != (pt.cls == PhaseClass::escaping)) {
        nlohmann::json d = {{"eps", pt.eps},       {"eta", eta},           {"ell", pt.ell},
                            {"criterion", pt.criterion}, {"band", pt.band}, {"class", to_string(pt.cls)},
                            {"solver_branch", solver_escapes ? "escaping" : "non_escaping"},
                            {"solver_gmax", pt.solver_gmax}, {"boundary_ambiguous", prof.boundary_ambiguous}};
        throw Error(errc::inconsistent, "eigenvalue criterion and extended solver disagree", d.dump());
    }
    pt.confirmed = true;
    return pt;
}

PhasePoint classify_point(int N, const Potential& W, const Potential& Wt, double eps, double eta,
                          const RadialGrid& grid, bool confirm, const SolverOptions& opts) {
    return classify_point(gl_linearization_eigenvalue(N, W, eps, grid, opts), W, Wt, eta, confirm, opts);
}

bool PhaseDiagram::rows_monotone() const {
    for (const auto& row : points) {
        std::vector<PhaseClass> seq;
        std::size_t first_b = row.size(), last_b = 0, nb = 0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].cls == PhaseClass::boundary) {
                first_b = std::min(first_b, j);
                last_b = j;
                ++nb;
            } else if (seq.empty() || seq.back() != row[j].cls) {
                seq.push_back(row[j].cls);
            }
        }
        if (seq.size() > 2) return false;
        if (nb > 0 && last_b - first_b + 1 != nb) return false;
    }
    return true;
}

bool PhaseDiagram::eta0_ratio_monotone() const {
    auto e = eta0;
    std::sort(e.begin(), e.end());
    for (std::size_t i = 1; i < e.size(); ++i) {
        const double a = e[i - 1].second / e[i - 1].first, b = e[i].second / e[i].first;
        if (b < a * (1.0 - 1e-9)) return false;
    }
    return true;
}

PhaseDiagram sweep(int N, const Potential& W, const Potential& Wt, const std::vector<double>& eps,
                   const std::vector<double>& eta, const RadialGrid& grid, const SweepOptions& opts) {
    if (eps.empty() || eta.empty()) throw Error(errc::invalid_argument, "empty sweep range");
    for (double x : eps)
        if (!(x > 0.0)) throw Error(errc::invalid_argument, "eps samples must be > 0");
    for (double x : eta)
        if (!(x > 0.0)) throw Error(errc::invalid_argument, "eta samples must be > 0");
    if (!(opts.confirm_fraction >= 0.0 && opts.confirm_fraction <= 1.0))
        throw Error(errc::invalid_argument, "confirm_fraction must lie in [0, 1]");
    if (grid.dimension() != N) throw Error(errc::grid_mismatch, "grid dimension differs from N");

    const std::size_t ne = eps.size(), nh = eta.size();
    // drawn up front in index order, so the selection does not depend on
    // the number of workers
    std::vector<std::vector<char>> confirm(ne, std::vector<char>(nh, 0));
    std::mt19937_64 rng(opts.seed);
    for (auto& row : confirm)
        for (auto& c : row) c = static_cast<double>(rng() >> 11) * 0x1.0p-53 < opts.confirm_fraction;

    PhaseDiagram out;
    out.N = N;
    out.W = W.to_json();
    out.Wt = Wt.to_json();
    out.eps = eps;
    out.eta = eta;
    out.points.assign(ne, {});
    out.ell.assign(ne, 0.0);

    std::vector<std::exception_ptr> errors(ne);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < ne;) {
            try {
                const auto lin = gl_linearization_eigenvalue(N, W, eps[i], grid, opts.solver);
                out.ell[i] = lin.ell;
                auto& row = out.points[i];
                row.reserve(nh);
                for (std::size_t j = 0; j < nh; ++j)
                    row.push_back(classify_point(lin, W, Wt, eta[j], confirm[i][j] != 0, opts.solver));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(ne)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    const bool region = has_region(N, W);
    for (std::size_t i = 0; i < ne; ++i)
        if (region && out.ell[i] < 0.0) out.eta0.emplace_back(eps[i], std::sqrt(Wt.eval(0.0, 1) / -out.ell[i]));

    if (region) {
        std::vector<std::size_t> order(ne);
        for (std::size_t i = 0; i < ne; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return eps[a] < eps[b]; });
        for (std::size_t k = 1; k < ne; ++k) {
            const std::size_t a = order[k - 1], b = order[k];
            if (out.ell[a] < 0.0 && out.ell[b] > 0.0) {
                out.eps0 = find_epsilon0(N, W, {eps[a], eps[b]}, 1e-8, grid, opts.solver).eps0;
                break;
            }
        }
    }
    return out;
}

std::vector<double> parse_range(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    if (parts.size() != 3) throw Error(errc::invalid_argument, "range must be lo:hi:count, got '" + spec + "'");
    double lo = 0.0, hi = 0.0;
    long count = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("lo");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("hi");
        count = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("count");
    } catch (const std::exception&) {
        throw Error(errc::invalid_argument, "range must be lo:hi:count, got '" + spec + "'");
    }
    if (count < 1 || !(hi >= lo)) throw Error(errc::invalid_argument, "range needs count >= 1 and hi >= lo");
    std::vector<double> v(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        if (lo <= 0.0)
            v[i] = lo + (hi - lo) * (i + 1) / static_cast<double>(count);
        else
            v[i] = count == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(count - 1);
    }
    return v;
}

} // namespace vortexlab
