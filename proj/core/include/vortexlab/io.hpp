#pragma once

#include "vortexlab/phase.hpp"
#include "vortexlab/profiles.hpp"
#include "vortexlab/spectral.hpp"
#include "vortexlab/stability.hpp"

#include <string>
#include <utility>
#include <vector>

namespace vortexlab::io {

// %.17g, enough to round-trip any double.
std::string num(double x);

// CSV: '#' header lines with the metadata, then one row per node.
std::string to_csv(const GLProfile& p, const Potential& W);
std::string to_csv(const ExtendedProfile& p, const Potential& W, const Potential& Wt);
std::string to_csv(const SphereProfile& p, const Potential& Wt);
std::string to_csv(const EigenPair& e, const RadialGrid& grid);
std::string ell_sweep_csv(const std::vector<std::pair<double, double>>& eps_ell);
std::string to_csv(const PhaseDiagram& d);

// JSON documents (pretty-printed, keys in a fixed order).
std::string to_json(const GLProfile& p, const Potential& W);
std::string to_json(const ExtendedProfile& p, const Potential& W, const Potential& Wt);
std::string to_json(const SphereProfile& p, const Potential& Wt);
std::string to_json(const PhaseDiagram& d);
std::string to_json(const StabilityReport& r);
std::string error_json(const std::string& code, const std::string& message, const std::string& details_json);

// Static rendering of the phase plane: escaping points hatched,
// non-escaping plain, boundary points outlined, the sampled eta0(eps) curve
// and the eps0 line.
std::string to_svg(const PhaseDiagram& d);

} // namespace vortexlab::io
