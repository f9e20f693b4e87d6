#include "run.hpp"

#include <vortexlab/error.hpp>
#include <vortexlab/io.hpp>
#include <vortexlab/phase.hpp>
#include <vortexlab/profiles.hpp>
#include <vortexlab/spectral.hpp>
#include <vortexlab/stability.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

namespace vortexlab::cli {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(errc::invalid_argument, msg); }

double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) bad("cannot parse " + what + " from '" + s + "'");
    return x;
}

Grading parse_grading(const std::string& s) {
    if (s == "uniform") return Grading::uniform();
    if (s == "graded") return Grading::graded(2.0);
    if (s.rfind("graded:", 0) == 0) {
        const double beta = parse_double(s.substr(7), "grading exponent");
        if (!(beta >= 1.0)) bad("grading exponent must be >= 1");
        return Grading::graded(beta);
    }
    bad("grading must be uniform, graded or graded:<beta>, got '" + s + "'");
}

bool has_format(const RunConfig& c, const std::string& f) {
    std::stringstream ss(c.format);
    for (std::string tok; std::getline(ss, tok, ',');)
        if (tok == f) return true;
    return false;
}

SolverOptions solver(const RunConfig& c) {
    SolverOptions o;
    o.tol = c.tol;
    o.max_newton = c.max_newton;
    o.continuation_steps = c.continuation_steps;
    o.escape_tol = c.escape_tol;
    return o;
}

RadialGrid grid_of(const RunConfig& c) { return make_grid(c.N, c.n, parse_grading(c.grading)); }

// Same nodes with one extra node at r_min/2.
RadialGrid halved_rmin(const RadialGrid& g) {
    std::vector<double> r;
    r.reserve(g.size() + 1);
    r.push_back(0.5 * g.r_min());
    r.insert(r.end(), g.nodes().begin(), g.nodes().end());
    return RadialGrid(g.dimension(), std::move(r), g.grading());
}

double max_diff_at_coarse(const RadialGrid& fine, const std::vector<double>& uf, const std::vector<double>& uc) {
    const auto idx = fine.coarse_indices();
    double d = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) d = std::max(d, std::abs(uf[idx[k]] - uc[k]));
    return d;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int t = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (t == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < t; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

Branch branch_of(const std::string& s) { return s == "escaping" ? Branch::escaping : Branch::non_escaping; }
const char* branch_name(Branch b) { return b == Branch::escaping ? "escaping" : "non_escaping"; }

double gmax(const ExtendedProfile& p) {
    double m = 0.0;
    for (double g : p.g) m = std::max(m, g);
    return m;
}

struct Point {
    std::optional<double> eps, eta;
    double eta0_factor = 0.0;  // eta given as a multiple of eta0(eps)
};

Point parse_point(const std::string& s) {
    Point p;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) bad("point entries must be key=value, got '" + tok + "'");
        const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "eps") {
            p.eps = parse_double(v, "eps");
        } else if (k == "eta") {
            // eta=eta0 or eta=2*eta0
            const auto at = v.find("eta0");
            if (at != std::string::npos && at + 4 == v.size()) {
                std::string f = v.substr(0, at);
                if (!f.empty() && f.back() == '*') f.pop_back();
                p.eta0_factor = f.empty() ? 1.0 : parse_double(f, "eta0 factor");
                p.eta = 0.0;
            } else {
                p.eta = parse_double(v, "eta");
            }
        } else {
            bad("unknown point key '" + k + "'");
        }
    }
    return p;
}

void emit(Artifacts& a, const RunConfig& c, const std::string& stem, const std::string& csv, const std::string& json) {
    if (has_format(c, "csv")) a.files.emplace_back(stem + ".csv", csv);
    if (has_format(c, "json")) a.files.emplace_back(stem + ".json", json);
}

// ---------------------------------------------------------------- profile

Artifacts run_profile(const RunConfig& c) {
    const auto W = Potential::parse(c.W), Wt = Potential::parse(c.Wt);
    const auto grid = grid_of(c);
    const auto opts = solver(c);
    Artifacts a;
    auto& d = a.diagnostics;

    if (c.model == "gl") {
        const auto p = solve_gl_profile(c.N, W, *c.eps, grid, opts);
        const auto q = solve_gl_profile(c.N, W, *c.eps, grid.coarsened(), opts);
        d["residual"] = residual(p, W);
        d["solver_residual"] = p.residual_norm;
        d["energy"] = reduced_energy_gl(p, W, p.eps);
        d["refinement"] = {{"coarse_n", q.grid.size()}, {"max_diff_f", max_diff_at_coarse(grid, p.f, q.f)}};
        emit(a, c, "profile", io::to_csv(p, W), io::to_json(p, W));
    } else if (c.model == "extended") {
        const auto gl = solve_gl_profile(c.N, W, *c.eps, grid, opts);
        const auto p = solve_extended_profile(gl, W, Wt, *c.eta, branch_of(c.branch), opts);
        const auto glc = solve_gl_profile(c.N, W, *c.eps, grid.coarsened(), opts);
        const auto q = solve_extended_profile(glc, W, Wt, *c.eta, branch_of(c.branch), opts);
        d["residual"] = residual(p, W, Wt);
        d["solver_residual"] = p.residual_norm;
        d["branch"] = branch_name(p.branch);
        d["g_max"] = gmax(p);
        d["escape_unavailable"] = p.escape_unavailable;
        d["energy"] = reduced_energy_extended(p, W, Wt, p.eps, p.eta);
        d["refinement"] = {{"coarse_n", q.grid.size()},
                           {"coarse_branch", branch_name(q.branch)},
                           {"max_diff_f", max_diff_at_coarse(grid, p.f, q.f)},
                           {"max_diff_g", max_diff_at_coarse(grid, p.g, q.g)}};
        emit(a, c, "profile", io::to_csv(p, W, Wt), io::to_json(p, W, Wt));
    } else {
        const auto p = solve_sphere_profile(c.N, Wt, *c.eta, grid, opts);
        const auto q = solve_sphere_profile(c.N, Wt, *c.eta, grid.coarsened(), opts);
        d["residual"] = residual(p, Wt);
        d["solver_residual"] = p.residual_norm;
        d["no_escape"] = p.no_escape;
        d["energy"] = reduced_energy_mm(p, Wt, p.eta);
        d["equator_energy"] = reduced_energy_mm(equator_profile(grid, p.eta), Wt, p.eta);
        if (grid.size() >= 5) d["pohozaev"] = pohozaev_check(p, Wt, p.eta);
        d["refinement"] = {{"coarse_n", q.grid.size()}, {"max_diff_theta", max_diff_at_coarse(grid, p.theta, q.theta)}};
        emit(a, c, "profile", io::to_csv(p, Wt), io::to_json(p, Wt));
    }
    return a;
}

// ---------------------------------------------------------------- eigen

ojson eigen_json(const GLLinearization& lin, const Potential& W) {
    return {{"eps", lin.profile.eps},
            {"ell", lin.ell},
            {"eps2_ell", lin.profile.eps * lin.profile.eps * lin.ell},
            {"discrete_eigenvalue", lin.pair.discrete_eigenvalue},
            {"coarse_eigenvalue", lin.pair.coarse_eigenvalue},
            {"residual", lin.pair.residual},
            {"lower_bound", -W.eval(1.0, 1) / (lin.profile.eps * lin.profile.eps)}};
}

Artifacts run_eigen(const RunConfig& c) {
    const auto W = Potential::parse(c.W);
    const auto grid = grid_of(c);
    const auto opts = solver(c);
    Artifacts a;
    auto& d = a.diagnostics;
    ojson doc = {{"type", "GLEigen"}, {"N", c.N}, {"W", ojson::parse(W.to_json())}, {"grid", grid.describe()}};

    std::optional<std::pair<double, double>> bracket;
    if (c.eps) {
        const auto lin = gl_linearization_eigenvalue(c.N, W, *c.eps, grid, opts);
        const auto fine = gl_linearization_eigenvalue(c.N, W, *c.eps, halved_rmin(grid), opts);
        doc["eigen"] = eigen_json(lin, W);
        d["profile_residual"] = lin.profile.residual_norm;
        d["eigen_residual"] = lin.pair.residual;
        d["refinement"] = {{"richardson_correction", lin.ell - lin.pair.discrete_eigenvalue},
                           {"coarse_minus_fine", lin.pair.coarse_eigenvalue - lin.pair.discrete_eigenvalue},
                           {"rmin_halved_shift", fine.ell - lin.ell}};
        if (has_format(c, "csv")) a.files.emplace_back("eigenfunction.csv", io::to_csv(lin.pair, grid));
    }
    if (!c.eps_range.empty()) {
        const auto eps = parse_range(c.eps_range);
        std::vector<std::pair<double, double>> rows(eps.size());
        std::vector<double> resid(eps.size());
        parallel_for(eps.size(), c.jobs, [&](std::size_t i) {
            const auto lin = gl_linearization_eigenvalue(c.N, W, eps[i], grid, opts);
            rows[i] = {eps[i], lin.ell};
            resid[i] = lin.profile.residual_norm;
        });
        bool increasing = true;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double a0 = rows[i - 1].first * rows[i - 1].first * rows[i - 1].second;
            const double a1 = rows[i].first * rows[i].first * rows[i].second;
            if (rows[i].first > rows[i - 1].first && !(a1 > a0)) increasing = false;
            if (!bracket && rows[i - 1].second < 0.0 && rows[i].second > 0.0)
                bracket = {rows[i - 1].first, rows[i].first};
        }
        d["sweep"] = {{"count", rows.size()},
                      {"eps2_ell_increasing", increasing},
                      {"max_profile_residual", *std::max_element(resid.begin(), resid.end())}};
        ojson arr = ojson::array();
        for (const auto& [e, l] : rows) arr.push_back({{"eps", e}, {"ell", l}, {"eps2_ell", e * e * l}});
        doc["sweep"] = arr;
        if (has_format(c, "csv")) a.files.emplace_back("ell_sweep.csv", io::ell_sweep_csv(rows));
    }
    if (c.find_eps0) {
        if (!c.bracket.empty()) {
            const auto comma = c.bracket.find(',');
            if (comma == std::string::npos) bad("bracket must be lo,hi");
            bracket = {parse_double(c.bracket.substr(0, comma), "bracket"),
                       parse_double(c.bracket.substr(comma + 1), "bracket")};
        }
        if (!bracket) {
            if (!has_threshold(c.N, W))
                throw Error(errc::no_threshold, "l(eps) has no sign change for this N and W");
            nlohmann::json det = nlohmann::json::object();
            det["eps_range"] = c.eps_range;
            throw Error(errc::bracket, "no sign change of l in the sweep; pass --bracket lo,hi", det.dump());
        }
        const auto r = find_epsilon0(c.N, W, *bracket, 1e-10, grid, opts);
        ojson hist = ojson::array();
        for (const auto& [e, l] : r.history) hist.push_back({e, l});
        doc["eps0"] = {{"eps0", r.eps0}, {"ell", r.ell}, {"iterations", r.iterations},
                       {"bracket", {bracket->first, bracket->second}}, {"history", hist}};
        d["eps0"] = r.eps0;
        d["ell_at_eps0"] = r.ell;
    }
    if (has_format(c, "json")) a.files.emplace_back("eigen.json", doc.dump(2));
    return a;
}

// ---------------------------------------------------------------- phase

Artifacts run_phase(const RunConfig& c) {
    const auto W = Potential::parse(c.W), Wt = Potential::parse(c.Wt);
    const auto grid = grid_of(c);
    Artifacts a;
    auto& d = a.diagnostics;
    if (c.subcommand == "point") {
        const auto pt = classify_point(c.N, W, Wt, *c.eps, *c.eta, grid, c.confirm_fraction > 0.0, solver(c));
        ojson j = {{"type", "PhasePoint"},
                   {"eps", pt.eps},
                   {"eta", pt.eta},
                   {"class", to_string(pt.cls)},
                   {"criterion", pt.criterion},
                   {"ell", pt.ell},
                   {"band", pt.band},
                   {"confirmed", pt.confirmed}};
        if (pt.solver_branch) {
            j["solver_branch"] = branch_name(*pt.solver_branch);
            j["solver_gmax"] = pt.solver_gmax;
        }
        d["class"] = to_string(pt.cls);
        a.files.emplace_back("point.json", j.dump(2));
        return a;
    }
    SweepOptions so;
    so.confirm_fraction = c.confirm_fraction;
    so.seed = c.seed;
    so.jobs = c.jobs;
    so.solver = solver(c);
    const auto diag = sweep(c.N, W, Wt, parse_range(c.eps_range), parse_range(c.eta_range), grid, so);
    std::size_t n_esc = 0, n_non = 0, n_bnd = 0, n_conf = 0;
    for (const auto& row : diag.points)
        for (const auto& p : row) {
            n_esc += p.cls == PhaseClass::escaping;
            n_non += p.cls == PhaseClass::non_escaping;
            n_bnd += p.cls == PhaseClass::boundary;
            n_conf += p.confirmed;
        }
    d["counts"] = {{"Escaping", n_esc}, {"NonEscaping", n_non}, {"Boundary", n_bnd}, {"confirmed", n_conf}};
    d["rows_monotone"] = diag.rows_monotone();
    d["eta0_ratio_monotone"] = diag.eta0_ratio_monotone();
    d["eps0"] = diag.eps0 ? ojson(*diag.eps0) : ojson(nullptr);
    emit(a, c, "phase", io::to_csv(diag), io::to_json(diag));
    if (has_format(c, "svg")) a.files.emplace_back("phase.svg", io::to_svg(diag));
    return a;
}

// ---------------------------------------------------------------- stability

struct StabilityRun {
    StabilityReport report;
    double profile_residual = 0.0;
    std::string branch;
};

StabilityRun stability_on(const RunConfig& c, const Point& pt, const RadialGrid& grid) {
    const auto W = Potential::parse(c.W), Wt = Potential::parse(c.Wt);
    const auto opts = solver(c);
    StabilityRun out;
    if (c.model == "sphere") {
        const auto p = solve_sphere_profile(c.N, Wt, *pt.eta, grid, opts);
        out.report = spectrum_summary(p, Wt, *pt.eta, c.lambda_max);
        out.profile_residual = p.residual_norm;
        out.branch = p.no_escape ? "equator" : "escaping";
        return out;
    }
    const auto gl = solve_gl_profile(c.N, W, *pt.eps, grid, opts);
    if (c.model == "gl") {
        out.report = spectrum_summary(gl, W, *pt.eps, c.lambda_max);
        out.profile_residual = gl.residual_norm;
        out.branch = "gl";
        return out;
    }
    double eta = *pt.eta;
    if (pt.eta0_factor > 0.0) eta = pt.eta0_factor * eta0(gl_linearization_eigenvalue(gl, W), W, Wt);
    const auto p = c.branch == "non_escaping" ? non_escaping_profile(gl, eta)
                                              : solve_extended_profile(gl, W, Wt, eta, Branch::escaping, opts);
    if (c.branch == "escaping" && p.branch != Branch::escaping) {
        nlohmann::json det = {{"eps", *pt.eps}, {"eta", eta}, {"g_max", gmax(p)}};
        throw Error(errc::no_escaping_region, "no escaping solution at this point", det.dump());
    }
    out.report = spectrum_summary(p, W, Wt, *pt.eps, eta, c.lambda_max);
    out.profile_residual = p.residual_norm;
    out.branch = branch_name(p.branch);
    return out;
}

Artifacts run_stability(const RunConfig& c) {
    const auto pt = parse_point(c.point);
    const auto grid = grid_of(c);
    const auto base = stability_on(c, pt, grid);
    const auto fine = stability_on(c, pt, halved_rmin(grid));
    Artifacts a;
    auto& d = a.diagnostics;
    d["profile_residual"] = base.profile_residual;
    d["branch"] = base.branch;
    d["verdict"] = to_string(base.report.verdict);
    double shift = 0.0;
    for (std::size_t k = 0; k < base.report.modes.size() && k < fine.report.modes.size(); ++k)
        shift = std::max(shift, std::abs(base.report.modes[k].eigen.eigenvalue - fine.report.modes[k].eigen.eigenvalue));
    d["rmin_refinement"] = {{"verdict", to_string(fine.report.verdict)},
                            {"verdict_stable", fine.report.verdict == base.report.verdict &&
                                                   fine.report.kernel_dim == base.report.kernel_dim},
                            {"max_eigenvalue_shift", shift}};

    auto doc = ojson::parse(io::to_json(base.report));
    doc["point"] = c.point;
    doc["branch"] = base.branch;
    if (base.report.kernel_mode) {
        std::ostringstream os;
        os << "# field = " << base.report.kernel_field << "\n# lambda = "
           << io::num(base.report.modes[*base.report.kernel_mode].lambda) << "\nr," << base.report.kernel_field << '\n';
        for (std::size_t j = 0; j < grid.size(); ++j)
            os << io::num(grid[j]) << ',' << io::num(base.report.kernel_function[j]) << '\n';
        a.files.emplace_back("kernel.csv", os.str());
        doc["kernel"]["csv"] = "kernel.csv";
        doc["kernel"].erase("function");
    }
    a.files.emplace_back("stability.json", doc.dump(2));
    return a;
}

// ---------------------------------------------------------------- energy

Artifacts run_energy(const RunConfig& c) {
    const auto W = Potential::parse(c.W), Wt = Potential::parse(c.Wt);
    const auto grid = grid_of(c);
    const auto opts = solver(c);
    Artifacts a;
    auto& d = a.diagnostics;
    ojson doc = {{"type", "Energy"}, {"model", c.model}, {"N", c.N}};
    if (c.model == "gl") {
        const auto p = solve_gl_profile(c.N, W, *c.eps, grid, opts);
        doc["eps"] = *c.eps;
        doc["energy"] = reduced_energy_gl(p, W, *c.eps);
        d["residual"] = p.residual_norm;
    } else if (c.model == "extended") {
        const auto gl = solve_gl_profile(c.N, W, *c.eps, grid, opts);
        const auto esc = solve_extended_profile(gl, W, Wt, *c.eta, Branch::escaping, opts);
        const auto non = non_escaping_profile(gl, *c.eta);
        const double e_esc = reduced_energy_extended(esc, W, Wt, *c.eps, *c.eta);
        const double e_non = reduced_energy_extended(non, W, Wt, *c.eps, *c.eta);
        doc["eps"] = *c.eps;
        doc["eta"] = *c.eta;
        doc["escaping_found"] = esc.branch == Branch::escaping;
        doc["energy_escaping"] = esc.branch == Branch::escaping ? ojson(e_esc) : ojson(nullptr);
        doc["energy_non_escaping"] = e_non;
        doc["gap"] = esc.branch == Branch::escaping ? ojson(e_non - e_esc) : ojson(nullptr);
        d["residual"] = esc.residual_norm;
        d["g_max"] = gmax(esc);
    } else {
        const auto p = solve_sphere_profile(c.N, Wt, *c.eta, grid, opts);
        doc["eta"] = *c.eta;
        doc["energy"] = reduced_energy_mm(p, Wt, *c.eta);
        doc["equator_energy"] = reduced_energy_mm(equator_profile(grid, *c.eta), Wt, *c.eta);
        doc["no_escape"] = p.no_escape;
        d["residual"] = p.residual_norm;
    }
    a.files.emplace_back("energy.json", doc.dump(2));
    return a;
}

} // namespace

RunConfig resolve(RunConfig c) {
    static const std::vector<std::string> commands = {"profile", "eigen", "phase", "stability", "energy"};
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) bad("unknown command '" + c.command + "'");
    if (c.N < 2) bad("N must be >= 2");
    if (c.n < 16) bad("grid needs n >= 16");
    if (!(c.tol > 0.0)) bad("tol must be > 0");
    if (c.max_newton < 1) bad("max-newton must be >= 1");
    if (c.continuation_steps < 1) bad("continuation-steps must be >= 1");
    if (c.jobs < 1) bad("jobs must be >= 1");
    if (c.branch != "escaping" && c.branch != "non_escaping") bad("branch must be escaping or non_escaping");
    if (!c.model.empty() && c.model != "gl" && c.model != "extended" && c.model != "sphere")
        bad("model must be gl, extended or sphere");
    if (!(c.confirm_fraction >= 0.0 && c.confirm_fraction <= 1.0)) bad("confirm-fraction must lie in [0, 1]");
    parse_grading(c.grading);
    Potential::parse(c.W).validate();
    Potential::parse(c.Wt).validate();
    if (c.eps && !(*c.eps > 0.0)) bad("eps must be > 0");
    if (c.eta && !(*c.eta > 0.0)) bad("eta must be > 0");

    if (c.command == "profile" || c.command == "energy") {
        if (c.model.empty()) c.model = c.eta && !c.eps ? "sphere" : c.eta ? "extended" : "gl";
        if (c.model != "sphere" && !c.eps) bad(c.command + " needs --eps");
        if (c.model != "gl" && !c.eta) bad(c.command + " needs --eta for model " + c.model);
    } else if (c.command == "eigen") {
        if (!c.eps && c.eps_range.empty() && !c.find_eps0) bad("eigen needs --eps, --eps-sweep or --find-eps0");
        if (c.find_eps0 && c.eps_range.empty() && c.bracket.empty()) bad("--find-eps0 needs --eps-sweep or --bracket");
        if (!c.eps_range.empty()) parse_range(c.eps_range);
    } else if (c.command == "phase") {
        if (c.subcommand.empty()) c.subcommand = "sweep";
        if (c.subcommand == "sweep") {
            if (c.eps_range.empty() || c.eta_range.empty()) bad("phase sweep needs --eps and --eta ranges");
            parse_range(c.eps_range);
            parse_range(c.eta_range);
        } else if (c.subcommand == "point") {
            if (!c.eps || !c.eta) bad("phase point needs --eps and --eta");
        } else {
            bad("phase subcommand must be sweep or point");
        }
    } else if (c.command == "stability") {
        if (c.point.empty()) bad("stability needs --point eps=..,eta=..");
        const auto p = parse_point(c.point);
        if (c.model.empty()) c.model = p.eps && p.eta ? "extended" : p.eta ? "sphere" : "gl";
        if (c.model != "sphere" && !p.eps) bad("stability point needs eps");
        if (c.model == "extended" && !p.eta) bad("stability point needs eta for the extended model");
        if (c.model == "sphere" && (!p.eta || p.eta0_factor > 0.0)) bad("sphere stability needs a numeric eta");
        if (p.eps && !(*p.eps > 0.0)) bad("eps must be > 0");
        if (p.eta && p.eta0_factor == 0.0 && !(*p.eta > 0.0)) bad("eta must be > 0");
        if (p.eta0_factor < 0.0) bad("eta0 factor must be > 0");
    }
    return c;
}

namespace {

ojson grid_json(const RunConfig& c) {
    const auto g = parse_grading(c.grading);
    ojson grading = g.kind == Grading::Kind::uniform ? ojson("uniform") : ojson{{"graded", g.beta}};
    return {{"n", c.n}, {"grading", grading}};
}

} // namespace

ojson to_json(const RunConfig& c) {
    auto opt = [](const std::optional<double>& x) { return x ? ojson(*x) : ojson(nullptr); };
    return {{"command", c.command},
            {"subcommand", c.subcommand},
            {"N", c.N},
            {"W", c.W},
            {"Wt", c.Wt},
            {"model", c.model},
            {"branch", c.branch},
            {"eps", opt(c.eps)},
            {"eta", opt(c.eta)},
            {"eps_range", c.eps_range},
            {"eta_range", c.eta_range},
            {"point", c.point},
            {"find_eps0", c.find_eps0},
            {"bracket", c.bracket},
            {"grid", grid_json(c)},
            {"solver",
             {{"tol", c.tol},
              {"max_newton", c.max_newton},
              {"continuation_steps", c.continuation_steps},
              {"escape_tol", c.escape_tol}}},
            {"lambda_max", c.lambda_max},
            {"confirm_fraction", c.confirm_fraction},
            {"seed", c.seed},
            {"jobs", c.jobs},
            {"out_dir", c.out_dir},
            {"format", c.format}};
}

std::string cache_key(const RunConfig& c) {
    // nlohmann::json keeps keys sorted, which makes the dump canonical
    nlohmann::json j = nlohmann::json::parse(to_json(c).dump());
    j.erase("out_dir");
    j.erase("format");
    j.erase("jobs");
    j["format_set"] = nlohmann::json::array();
    for (const char* f : {"csv", "json", "svg"})
        if (has_format(c, f)) j["format_set"].push_back(f);
    return j.dump();
}

Artifacts run(const RunConfig& c) {
    if (c.command == "profile") return run_profile(c);
    if (c.command == "eigen") return run_eigen(c);
    if (c.command == "phase") return run_phase(c);
    if (c.command == "stability") return run_stability(c);
    return run_energy(c);
}

std::string serialise(const Artifacts& a) {
    ojson files = ojson::array();
    for (const auto& [name, content] : a.files) files.push_back({{"name", name}, {"content", content}});
    return ojson{{"files", files}, {"diagnostics", a.diagnostics}}.dump();
}

Artifacts deserialise(const std::string& s) {
    const auto j = ojson::parse(s);
    Artifacts a;
    for (const auto& f : j.at("files")) a.files.emplace_back(f.at("name").get<std::string>(), f.at("content").get<std::string>());
    a.diagnostics = j.at("diagnostics");
    return a;
}

} // namespace vortexlab::cli
