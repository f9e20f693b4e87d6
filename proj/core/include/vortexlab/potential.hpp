#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace vortexlab {

// One cubic piece V(t) = c0 + c1 (t-from) + c2 (t-from)^2 + c3 (t-from)^3 on [from, to].
struct CubicPiece {
    double from = 0.0;
    double to = 0.0;
    double c[4] = {0.0, 0.0, 0.0, 0.0};
};

// Convex potential W or W~ with V(0) = 0, V >= 0, V'' >= 0 on its domain.
class Potential {
public:
    enum class Kind { quadratic, linear, zero, flat_well, piecewise };

    static Potential quadratic();
    static Potential linear();
    static Potential zero();
    static Potential flat_well(double t0);
    static Potential piecewise(std::vector<CubicPiece> pieces);

    // {"kind": "quadratic" | "linear" | "zero" | {"flat_well": t0} | {"piecewise": [...]}}
    // also accepts the bare kind value and the shorthand "flat_well(0.3)".
    static Potential from_json(std::string_view text);
    static Potential parse(std::string_view text);
    std::string to_json() const;
    std::string label() const;

    Kind kind() const noexcept { return kind_; }
    double t0() const noexcept { return t0_; }
    double domain_lo() const noexcept { return lo_; }
    double domain_hi() const noexcept { return hi_; }

    // order 0, 1, 2; throws domain_error outside [domain_lo, domain_hi]
    double eval(double t, int order) const;
    double value(double t) const { return eval(t, 0); }
    double d1(double t) const { return eval(t, 1); }
    double d2(double t) const { return eval(t, 2); }
    double eval_clamped(double t, int order) const;

    // Dense sampling of V(0)=0, V>=0, V''>=0 and C^2 continuity; throws
    // nonconforming_potential on failure.
    void validate(int samples = 1000) const;

private:
    Potential(Kind kind, double lo, double hi) : kind_(kind), lo_(lo), hi_(hi) {}
    double raw(double t, int order) const;

    Kind kind_;
    double lo_;
    double hi_;
    double t0_ = 0.0;
    std::vector<CubicPiece> pieces_;
};

double potential_eval(const Potential& p, double t, int order);

} // namespace vortexlab
