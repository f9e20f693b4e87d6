#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vortexlab::cli {

struct RunConfig {
    std::string command;     // profile | eigen | phase | stability | energy
    std::string subcommand;  // phase: sweep | point
    int N = 3;
    std::string W = "quadratic";
    std::string Wt = "linear";
    std::string model;               // gl | extended | sphere; inferred when empty
    std::string branch = "escaping"; // escaping | non_escaping
    std::optional<double> eps, eta;
    std::string eps_range, eta_range;  // lo:hi:count
    std::string point;                 // stability: eps=..,eta=..
    bool find_eps0 = false;
    std::string bracket;  // lo,hi
    int n = 2000;
    std::string grading = "graded:2";
    double tol = 1e-10;
    int max_newton = 200;
    int continuation_steps = 400;
    double escape_tol = 1e-6;
    double lambda_max = 0.0;
    double confirm_fraction = 0.0;
    std::uint64_t seed = 20240611;
    int jobs = 1;
    std::string out_dir = ".";
    std::string format = "csv,json,svg";
};

struct Artifacts {
    std::vector<std::pair<std::string, std::string>> files;  // name, content
    nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
};

// Fills in inferred fields and throws invalid_argument for anything missing
// or out of range for the chosen command.
RunConfig resolve(RunConfig c);
nlohmann::ordered_json to_json(const RunConfig& c);
// The subset of the resolved config that determines the payload (no output
// paths, formats or worker counts), serialised canonically.
std::string cache_key(const RunConfig& c);

Artifacts run(const RunConfig& c);

std::string serialise(const Artifacts& a);
Artifacts deserialise(const std::string& s);

} // namespace vortexlab::cli
