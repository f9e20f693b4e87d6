#include "vortexlab/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vortexlab::io {

using ojson = nlohmann::ordered_json;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

ojson potential(const Potential& p) { return ojson::parse(p.to_json()); }

ojson trace(const std::vector<TraceEntry>& t) {
    ojson a = ojson::array();
    for (const auto& e : t)
        a.push_back({{"stage", e.stage},
                     {"parameter", e.parameter},
                     {"iterations", e.iterations},
                     {"residual", e.residual},
                     {"converged", e.converged}});
    return a;
}

ojson grid_json(const RadialGrid& g) {
    return {{"N", g.dimension()},
            {"n", g.size()},
            {"r_min", g.r_min()},
            {"grading", g.grading().kind == Grading::Kind::uniform ? "uniform" : "graded"},
            {"beta", g.grading().beta}};
}

std::string tick(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::string branch_name(Branch b) { return b == Branch::escaping ? "escaping" : "non_escaping"; }

void header(std::ostringstream& os, const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) os << "# " << k << " = " << v << '\n';
}

} // namespace

std::string to_csv(const GLProfile& p, const Potential& W) {
    std::ostringstream os;
    header(os, {{"N", std::to_string(p.grid.dimension())},
                {"eps", num(p.eps)},
                {"W", W.to_json()},
                {"residual", num(p.residual_norm)},
                {"grid", p.grid.describe()}});
    os << "r,f,v\n";
    for (std::size_t j = 0; j < p.grid.size(); ++j) os << num(p.grid[j]) << ',' << num(p.f[j]) << ',' << num(p.v[j]) << '\n';
    return os.str();
}

std::string to_csv(const ExtendedProfile& p, const Potential& W, const Potential& Wt) {
    std::ostringstream os;
    header(os, {{"N", std::to_string(p.grid.dimension())},
                {"eps", num(p.eps)},
                {"eta", num(p.eta)},
                {"W", W.to_json()},
                {"Wt", Wt.to_json()},
                {"branch", branch_name(p.branch)},
                {"residual", num(p.residual_norm)},
                {"grid", p.grid.describe()}});
    os << "r,f,g\n";
    for (std::size_t j = 0; j < p.grid.size(); ++j) os << num(p.grid[j]) << ',' << num(p.f[j]) << ',' << num(p.g[j]) << '\n';
    return os.str();
}

std::string to_csv(const SphereProfile& p, const Potential& Wt) {
    std::ostringstream os;
    header(os, {{"N", std::to_string(p.grid.dimension())},
                {"eta", num(p.eta)},
                {"Wt", Wt.to_json()},
                {"no_escape", p.no_escape ? "true" : "false"},
                {"residual", num(p.residual_norm)},
                {"grid", p.grid.describe()}});
    os << "r,theta\n";
    for (std::size_t j = 0; j < p.grid.size(); ++j) os << num(p.grid[j]) << ',' << num(p.theta[j]) << '\n';
    return os.str();
}

std::string to_csv(const EigenPair& e, const RadialGrid& grid) {
    std::ostringstream os;
    header(os, {{"eigenvalue", num(e.eigenvalue)},
                {"discrete_eigenvalue", num(e.discrete_eigenvalue)},
                {"residual", num(e.residual)},
                {"grid", grid.describe()}});
    os << "r,q\n";
    for (std::size_t j = 0; j < grid.size(); ++j) os << num(grid[j]) << ',' << num(e.eigenfunction[j]) << '\n';
    return os.str();
}

std::string ell_sweep_csv(const std::vector<std::pair<double, double>>& eps_ell) {
    std::ostringstream os;
    os << "eps,ell,eps2_ell\n";
    for (const auto& [e, l] : eps_ell) os << num(e) << ',' << num(l) << ',' << num(e * e * l) << '\n';
    return os.str();
}

std::string to_csv(const PhaseDiagram& d) {
    std::ostringstream os;
    header(os, {{"N", std::to_string(d.N)}, {"W", d.W}, {"Wt", d.Wt}, {"eps0", d.eps0 ? num(*d.eps0) : "none"}});
    os << "eps,eta,class,criterion,ell,band,confirmed\n";
    for (const auto& row : d.points)
        for (const auto& p : row)
            os << num(p.eps) << ',' << num(p.eta) << ',' << to_string(p.cls) << ',' << num(p.criterion) << ','
               << num(p.ell) << ',' << num(p.band) << ',' << (p.confirmed ? 1 : 0) << '\n';
    return os.str();
}

std::string to_json(const GLProfile& p, const Potential& W) {
    ojson j = {{"type", "GLProfile"},
               {"N", p.grid.dimension()},
               {"eps", p.eps},
               {"W", potential(W)},
               {"residual", p.residual_norm},
               {"grid", grid_json(p.grid)},
               {"trace", trace(p.trace)},
               {"r", p.grid.nodes()},
               {"f", p.f},
               {"v", p.v}};
    return j.dump(2);
}

std::string to_json(const ExtendedProfile& p, const Potential& W, const Potential& Wt) {
    ojson j = {{"type", "ExtendedProfile"},
               {"N", p.grid.dimension()},
               {"eps", p.eps},
               {"eta", p.eta},
               {"W", potential(W)},
               {"Wt", potential(Wt)},
               {"branch", branch_name(p.branch)},
               {"escape_unavailable", p.escape_unavailable},
               {"boundary_ambiguous", p.boundary_ambiguous},
               {"residual", p.residual_norm},
               {"grid", grid_json(p.grid)},
               {"trace", trace(p.trace)},
               {"r", p.grid.nodes()},
               {"f", p.f},
               {"g", p.g}};
    return j.dump(2);
}

std::string to_json(const SphereProfile& p, const Potential& Wt) {
    ojson j = {{"type", "SphereProfile"},
               {"N", p.grid.dimension()},
               {"eta", p.eta},
               {"Wt", potential(Wt)},
               {"no_escape", p.no_escape},
               {"residual", p.residual_norm},
               {"grid", grid_json(p.grid)},
               {"trace", trace(p.trace)},
               {"r", p.grid.nodes()},
               {"theta", p.theta}};
    return j.dump(2);
}

std::string to_json(const PhaseDiagram& d) {
    ojson pts = ojson::array();
    for (const auto& row : d.points)
        for (const auto& p : row) {
            ojson o = {{"eps", p.eps},       {"eta", p.eta},   {"class", to_string(p.cls)},
                       {"criterion", p.criterion}, {"ell", p.ell}, {"band", p.band},
                       {"confirmed", p.confirmed}};
            if (p.solver_branch) o["solver_branch"] = branch_name(*p.solver_branch);
            pts.push_back(std::move(o));
        }
    ojson e0 = ojson::array();
    for (const auto& [e, h] : d.eta0) e0.push_back({e, h});
    ojson j = {{"type", "PhaseDiagram"},
               {"N", d.N},
               {"W", ojson::parse(d.W)},
               {"Wt", ojson::parse(d.Wt)},
               {"eps", d.eps},
               {"eta", d.eta},
               {"ell", d.ell},
               {"eps0", d.eps0 ? ojson(*d.eps0) : ojson(nullptr)},
               {"eta0", e0},
               {"rows_monotone", d.rows_monotone()},
               {"eta0_ratio_monotone", d.eta0_ratio_monotone()},
               {"points", pts}};
    return j.dump(2);
}

std::string to_json(const StabilityReport& r) {
    ojson modes = ojson::array();
    for (const auto& m : r.modes)
        modes.push_back({{"k", m.degree},
                         {"lambda", m.lambda},
                         {"multiplicity", m.multiplicity},
                         {"eigenvalue", m.eigen.eigenvalue},
                         {"discrete_eigenvalue", m.eigen.discrete_eigenvalue},
                         {"coarse_eigenvalue", m.eigen.coarse_eigenvalue},
                         {"residual", m.eigen.residual}});
    ojson j = {{"type", "StabilityReport"},
               {"N", r.N},
               {"verdict", to_string(r.verdict)},
               {"kernel_dim", r.kernel_dim},
               {"band", r.band},
               {"ell", r.ell},
               {"divfree_certificate", r.certificate},
               {"alpha", r.alpha},
               {"lambda_monotone", r.lambda_monotone},
               {"q_sector_eigenvalue", r.q_sector_eigenvalue ? ojson(*r.q_sector_eigenvalue) : ojson(nullptr)},
               {"modes", modes}};
    if (r.kernel_mode) {
        j["kernel"] = {{"mode", *r.kernel_mode},
                       {"field", r.kernel_field},
                       {"sign_definite", r.kernel_sign_definite},
                       {"function", r.kernel_function}};
    }
    return j.dump(2);
}

std::string error_json(const std::string& code, const std::string& message, const std::string& details_json) {
    ojson details;
    try {
        details = ojson::parse(details_json);
    } catch (const std::exception&) {
        details = details_json;
    }
    ojson j = {{"error", {{"code", code}, {"message", message}, {"details", details}}}};
    return j.dump(2);
}

std::string to_svg(const PhaseDiagram& d) {
    constexpr double W = 640, H = 480, L = 70, R = 20, T = 30, B = 60;
    const double emax = *std::max_element(d.eps.begin(), d.eps.end());
    const double hmax = *std::max_element(d.eta.begin(), d.eta.end());
    const double ex = emax > 0 ? emax * 1.05 : 1.0, hx = hmax > 0 ? hmax * 1.05 : 1.0;
    auto X = [&](double e) { return L + (W - L - R) * e / ex; };
    auto Y = [&](double h) { return H - B - (H - T - B) * std::min(h, hx) / hx; };
    // cell size from the sample spacing
    const double cw = (W - L - R) / std::max<std::size_t>(d.eps.size(), 1) * 0.9;
    const double ch = (H - T - B) / std::max<std::size_t>(d.eta.size(), 1) * 0.9;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\">\n"
       << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
          "patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"#dbe8f7\"/>"
          "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#2b5c8a\" stroke-width=\"2\"/></pattern></defs>\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& row : d.points)
        for (const auto& p : row) {
            const char* fill = p.cls == PhaseClass::escaping ? "url(#hatch)" : "#f4f4f4";
            const char* stroke = p.cls == PhaseClass::boundary ? "#d04020" : "none";
            os << "<rect x=\"" << num(X(p.eps) - cw / 2) << "\" y=\"" << num(Y(p.eta) - ch / 2) << "\" width=\""
               << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
               << "\"/>\n";
        }
    if (!d.eta0.empty()) {
        auto e0 = d.eta0;
        std::sort(e0.begin(), e0.end());
        os << "<polyline fill=\"none\" stroke=\"#a01010\" stroke-width=\"2\" points=\"";
        for (const auto& [e, h] : e0) os << num(X(e)) << ',' << num(Y(h)) << ' ';
        os << "\"/>\n";
    }
    if (d.eps0)
        os << "<line x1=\"" << num(X(*d.eps0)) << "\" y1=\"" << T << "\" x2=\"" << num(X(*d.eps0)) << "\" y2=\""
           << H - B << "\" stroke=\"#a01010\" stroke-dasharray=\"6,4\"/>\n"
           << "<text x=\"" << num(X(*d.eps0) + 4) << "\" y=\"" << T + 14 << "\" font-size=\"12\">eps0</text>\n";
    // axes
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double e = ex * i / 4.0, h = hx * i / 4.0;
        os << "<text x=\"" << num(X(e)) << "\" y=\"" << H - B + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
           << tick(e) << "</text>\n"
           << "<text x=\"" << L - 6 << "\" y=\"" << num(Y(h) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
           << tick(h) << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" font-size=\"13\" text-anchor=\"middle\">eps</text>\n"
       << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << (T + H - B) / 2 << ")\">eta</text>\n"
       << "<text x=\"" << L << "\" y=\"18\" font-size=\"12\">N = " << d.N
       << ": hatched escaping, plain non-escaping, outlined boundary</text>\n"
       << "</svg>\n";
    return os.str();
}

} // namespace vortexlab::io
