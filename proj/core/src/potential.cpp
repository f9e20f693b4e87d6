#include "vortexlab/potential.hpp"

#include "vortexlab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vortexlab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double cubic(const CubicPiece& p, double t, int order) {
    const double x = t - p.from;
    switch (order) {
    case 0: return p.c[0] + x * (p.c[1] + x * (p.c[2] + x * p.c[3]));
    case 1: return p.c[1] + x * (2.0 * p.c[2] + 3.0 * x * p.c[3]);
    default: return 2.0 * p.c[2] + 6.0 * x * p.c[3];
    }
}

} // namespace

// Presets are defined on (-inf, 1]; "linear" only on [0, 1] since t < 0
// would make it negative. Solutions only ever need [0, 1].
Potential Potential::quadratic() { return Potential(Kind::quadratic, -kInf, 1.0); }
Potential Potential::linear() { return Potential(Kind::linear, 0.0, 1.0); }
Potential Potential::zero() { return Potential(Kind::zero, -kInf, 1.0); }

Potential Potential::flat_well(double t0) {
    if (!(t0 >= 0.0 && t0 < 1.0)) throw Error(errc::nonconforming_potential, "flat_well needs 0 <= t0 < 1");
    Potential p(Kind::flat_well, -kInf, 1.0);
    p.t0_ = t0;
    return p;
}

Potential Potential::piecewise(std::vector<CubicPiece> pieces) {
    if (pieces.empty()) throw Error(errc::nonconforming_potential, "piecewise potential needs at least one piece");
    std::sort(pieces.begin(), pieces.end(), [](const CubicPiece& a, const CubicPiece& b) { return a.from < b.from; });
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(pieces[i].to > pieces[i].from))
            throw Error(errc::nonconforming_potential, "piecewise potential has an empty or reversed piece");
        if (i > 0 && std::abs(pieces[i].from - pieces[i - 1].to) > 1e-14)
            throw Error(errc::nonconforming_potential, "piecewise potential pieces must be contiguous");
    }
    Potential p(Kind::piecewise, pieces.front().from, pieces.back().to);
    if (!(p.lo_ <= 0.0 && p.hi_ > 0.0))
        throw Error(errc::nonconforming_potential, "piecewise potential domain must contain [0, t] for some t > 0");
    p.pieces_ = std::move(pieces);
    p.validate();
    return p;
}

double Potential::raw(double t, int order) const {
    switch (kind_) {
    case Kind::quadratic: return order == 0 ? 0.5 * t * t : (order == 1 ? t : 1.0);
    case Kind::linear: return order == 0 ? t : (order == 1 ? 1.0 : 0.0);
    case Kind::zero: return 0.0;
    case Kind::flat_well: {
        if (t <= t0_) return 0.0;
        const double x = t - t0_;
        return order == 0 ? 0.5 * x * x : (order == 1 ? x : 1.0);
    }
    case Kind::piecewise: {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                                   [](double v, const CubicPiece& p) { return v < p.from; });
        const CubicPiece& piece = it == pieces_.begin() ? pieces_.front() : *(it - 1);
        return cubic(piece, t, order);
    }
    }
    return 0.0;
}

double Potential::eval(double t, int order) const {
    if (order < 0 || order > 2) throw Error(errc::invalid_argument, "potential derivative order must be 0, 1 or 2");
    if (!(t >= lo_ && t <= hi_)) {
        throw Error(errc::domain, "potential " + label() + " evaluated at t=" + fmt17(t) + " outside its domain [" +
                                      fmt17(lo_) + ", " + fmt17(hi_) + "]");
    }
    return raw(t, order);
}

double Potential::eval_clamped(double t, int order) const { return raw(std::clamp(t, lo_, hi_), order); }

void Potential::validate(int samples) const {
    const double a = std::max(lo_, -1.0);
    const double b = hi_;
    const double scale = 1.0 + std::abs(raw(b, 0)) + std::abs(raw(a, 0));
    const double tol = 1e-12 * scale;
    if (std::abs(raw(0.0, 0)) > tol) throw Error(errc::nonconforming_potential, label() + ": V(0) != 0");
    for (int i = 0; i < samples; ++i) {
        const double t = a + (b - a) * i / (samples - 1);
        if (raw(t, 0) < -tol)
            throw Error(errc::nonconforming_potential, label() + ": V < 0 at t=" + fmt17(t));
        if (raw(t, 2) < -tol)
            throw Error(errc::nonconforming_potential, label() + ": V'' < 0 at t=" + fmt17(t));
    }
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        const double t = pieces_[i].from;
        for (int order = 0; order <= 2; ++order) {
            if (std::abs(cubic(pieces_[i - 1], t, order) - cubic(pieces_[i], t, order)) > 1e-10 * scale)
                throw Error(errc::nonconforming_potential,
                            label() + ": not C^2 at breakpoint t=" + fmt17(t) + " (order " + std::to_string(order) + ")");
        }
    }
}

std::string Potential::label() const {
    switch (kind_) {
    case Kind::quadratic: return "quadratic";
    case Kind::linear: return "linear";
    case Kind::zero: return "zero";
    case Kind::flat_well: return "flat_well(" + fmt17(t0_) + ")";
    case Kind::piecewise: return "piecewise";
    }
    return "?";
}

std::string Potential::to_json() const {
    json j;
    switch (kind_) {
    case Kind::quadratic: j["kind"] = "quadratic"; break;
    case Kind::linear: j["kind"] = "linear"; break;
    case Kind::zero: j["kind"] = "zero"; break;
    case Kind::flat_well: j["kind"] = {{"flat_well", t0_}}; break;
    case Kind::piecewise: {
        json arr = json::array();
        for (const auto& p : pieces_)
            arr.push_back({{"from", p.from}, {"to", p.to}, {"coeffs", {p.c[0], p.c[1], p.c[2], p.c[3]}}});
        j["kind"] = {{"piecewise", arr}};
        break;
    }
    }
    return j.dump();
}

namespace {

Potential from_kind(const json& k) {
    if (k.is_string()) {
        const auto s = k.get<std::string>();
        if (s == "quadratic") return Potential::quadratic();
        if (s == "linear") return Potential::linear();
        if (s == "zero") return Potential::zero();
        throw Error(errc::invalid_argument, "unknown potential kind '" + s + "'");
    }
    if (k.is_object() && k.size() == 1) {
        if (k.contains("flat_well")) return Potential::flat_well(k.at("flat_well").get<double>());
        if (k.contains("piecewise")) {
            std::vector<CubicPiece> pieces;
            for (const auto& e : k.at("piecewise")) {
                CubicPiece p;
                p.from = e.at("from").get<double>();
                p.to = e.at("to").get<double>();
                const auto& c = e.at("coeffs");
                if (!c.is_array() || c.size() > 4 || c.empty())
                    throw Error(errc::invalid_argument, "piecewise coeffs must hold 1 to 4 numbers");
                for (std::size_t i = 0; i < c.size(); ++i) p.c[i] = c[i].get<double>();
                pieces.push_back(p);
            }
            return Potential::piecewise(std::move(pieces));
        }
    }
    throw Error(errc::invalid_argument, "unrecognised potential spec " + k.dump());
}

} // namespace

Potential Potential::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(errc::invalid_argument, std::string("potential spec is not valid JSON: ") + e.what());
    }
    try {
        if (j.is_object() && j.contains("kind")) return from_kind(j.at("kind"));
        return from_kind(j);
    } catch (const json::exception& e) {
        throw Error(errc::invalid_argument, std::string("malformed potential spec: ") + e.what());
    }
}

Potential Potential::parse(std::string_view text) {
    std::string s(text);
    if (s == "quadratic") return quadratic();
    if (s == "linear") return linear();
    if (s == "zero") return zero();
    const std::string fw = "flat_well(";
    if (s.rfind(fw, 0) == 0 && s.back() == ')') {
        const std::string arg = s.substr(fw.size(), s.size() - fw.size() - 1);
        std::size_t used = 0;
        double t0 = 0.0;
        try {
            t0 = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != arg.size() || arg.empty()) throw Error(errc::invalid_argument, "bad flat_well parameter '" + arg + "'");
        return flat_well(t0);
    }
    return from_json(s);
}

double potential_eval(const Potential& p, double t, int order) { return p.eval(t, order); }

} // namespace vortexlab
