#include "cache.hpp"
#include "run.hpp"

#include <vortexlab/error.hpp>
#include <vortexlab/io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using vortexlab::cli::RunConfig;

namespace {

void add_common(CLI::App& app, RunConfig& c) {
    app.add_option("--N", c.N, "spatial dimension")->capture_default_str();
    app.add_option("--W", c.W, "potential W: quadratic, linear, zero, flat_well(t0) or JSON")->capture_default_str();
    app.add_option("--Wt", c.Wt, "potential W~ for the extra component")->capture_default_str();
    app.add_option("--n", c.n, "grid nodes")->capture_default_str();
    app.add_option("--grading", c.grading, "uniform, graded or graded:<beta>")->capture_default_str();
    app.add_option("--tol", c.tol, "Newton residual tolerance")->capture_default_str();
    app.add_option("--max-newton", c.max_newton, "Newton iterations per continuation stage")->capture_default_str();
    app.add_option("--continuation-steps", c.continuation_steps, "maximum continuation stages")->capture_default_str();
    app.add_option("--escape-tol", c.escape_tol, "max g below which a profile counts as non-escaping")
        ->capture_default_str();
    app.add_option("--out-dir", c.out_dir, "directory for emitted files")->capture_default_str();
    app.add_option("--format", c.format, "comma list of csv, json, svg")->capture_default_str();
    app.add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
}

int fail(const std::string& code, const std::string& message, const std::string& details = "null") {
    std::cerr << vortexlab::io::error_json(code, message, details) << '\n';
    return 2;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw vortexlab::Error("io_error", "cannot write " + p.string());
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexlab: radial vortex profiles, linearisations, phase diagrams and stability"};
    app.set_config("--config", "", "TOML config file");
    app.require_subcommand(1);

    RunConfig c;
    std::optional<double> eps, eta;

    auto* profile = app.add_subcommand("profile", "solve a GL, extended or sphere profile");
    add_common(*profile, c);
    profile->add_option("--model", c.model, "gl, extended or sphere (inferred from --eps/--eta)");
    profile->add_option("--branch", c.branch, "escaping or non_escaping")->capture_default_str();
    profile->add_option("--eps", eps, "GL parameter");
    profile->add_option("--eta", eta, "extra-component parameter");

    auto* eigen = app.add_subcommand("eigen", "smallest eigenvalue l(eps) of the GL linearisation");
    add_common(*eigen, c);
    eigen->add_option("--eps", eps, "single eps");
    eigen->add_option("--eps-sweep", c.eps_range, "lo:hi:count");
    eigen->add_flag("--find-eps0", c.find_eps0, "bisect for the sign change of l");
    eigen->add_option("--bracket", c.bracket, "lo,hi for --find-eps0");

    auto* phase = app.add_subcommand("phase", "escaping / non-escaping classification");
    phase->require_subcommand(1);
    auto* psweep = phase->add_subcommand("sweep", "classify a grid of (eps, eta)");
    auto* ppoint = phase->add_subcommand("point", "classify one (eps, eta)");
    for (auto* sub : {psweep, ppoint}) {
        add_common(*sub, c);
        sub->add_option("--confirm-fraction", c.confirm_fraction, "fraction of points checked by the solver")
            ->capture_default_str();
    }
    psweep->add_option("--eps", c.eps_range, "lo:hi:count")->required();
    psweep->add_option("--eta", c.eta_range, "lo:hi:count")->required();
    psweep->add_option("--seed", c.seed, "seed for the confirmation sample")->capture_default_str();
    ppoint->add_option("--eps", eps)->required();
    ppoint->add_option("--eta", eta)->required();

    auto* stability = app.add_subcommand("stability", "mode-by-mode second variation");
    add_common(*stability, c);
    stability->add_option("--point", c.point, "eps=..,eta=.. (eta may be eta0 or k*eta0)")->required();
    stability->add_option("--branch", c.branch, "escaping or non_escaping")->capture_default_str();
    stability->add_option("--model", c.model, "gl, extended or sphere (inferred from the point)");
    stability->add_option("--lambda-max", c.lambda_max, "largest harmonic eigenvalue (default 3(N+1))");

    auto* energy = app.add_subcommand("energy", "reduced energies");
    add_common(*energy, c);
    energy->add_option("--model", c.model, "gl, extended or sphere");
    energy->add_option("--eps", eps);
    energy->add_option("--eta", eta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("invalid_argument", e.what());
    }

    for (auto* sub : app.get_subcommands()) {
        c.command = sub->get_name();
        if (c.command == "phase") c.subcommand = sub->get_subcommands().front()->get_name();
    }
    c.eps = eps;
    c.eta = eta;

    try {
        c = vortexlab::cli::resolve(c);
        const auto cache = vortexlab::cli::Cache::from_env();
        const bool cacheable = c.command == "profile" || c.command == "eigen";
        const std::string key = vortexlab::cli::cache_key(c);

        vortexlab::cli::Artifacts out;
        std::optional<std::string> hit;
        if (cacheable) hit = cache.load(key);
        if (hit) {
            out = vortexlab::cli::deserialise(*hit);
            std::clog << "cache hit\n";
        } else {
            out = vortexlab::cli::run(c);
            if (cacheable) cache.store(key, vortexlab::cli::serialise(out));
        }

        const fs::path dir(c.out_dir);
        fs::create_directories(dir);
        nlohmann::ordered_json files = nlohmann::ordered_json::array();
        for (const auto& [name, content] : out.files) {
            write_file(dir / name, content);
            files.push_back(name);
        }
        nlohmann::ordered_json manifest = {{"tool", "vortexlab"},
                                           {"status", "ok"},
                                           {"config", vortexlab::cli::to_json(c)},
                                           {"files", files},
                                           {"diagnostics", out.diagnostics}};
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
        for (const auto& f : files) std::cout << (dir / f.get<std::string>()).string() << '\n';
    } catch (const vortexlab::Error& e) {
        return fail(e.code(), e.what(), e.details());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}
