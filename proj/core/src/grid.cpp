#include "vortexlab/grid.hpp"

#include "vortexlab/error.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace vortexlab {

namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// 8-point Gauss-Legendre on [0,1]
constexpr std::array<double, 8> kGaussX = {
    0.019855071751231856, 0.10166676129318664, 0.2372337950418355, 0.40828267875217511,
    0.59171732124782489,  0.7627662049581645,  0.89833323870681336, 0.98014492824876814};
constexpr std::array<double, 8> kGaussW = {
    0.050614268145188129, 0.11119051722668724, 0.15685332293894364, 0.18134189168918099,
    0.18134189168918099,  0.15685332293894364, 0.11119051722668724, 0.050614268145188129};

// Quadratic Lagrange basis through offsets x[0..2] (relative to a), integrated
// against r^p over [a, a+h]. Output added into out[0..2].
void quadratic_panel(int p, double a, double h, const std::array<double, 3>& x,
                     std::array<double, 3>& out) {
    const double m0 = shifted_moment(p, 0, a, h);
    const double m1 = shifted_moment(p, 1, a, h);
    const double m2 = shifted_moment(p, 2, a, h);
    for (int i = 0; i < 3; ++i) {
        const double xj = x[(i + 1) % 3];
        const double xk = x[(i + 2) % 3];
        const double denom = (x[i] - xj) * (x[i] - xk);
        // (t - xj)(t - xk) = t^2 - (xj + xk) t + xj xk
        out[i] += (m2 - (xj + xk) * m1 + xj * xk * m0) / denom;
    }
}

std::vector<double> product_weights(const std::vector<double>& r, int p) {
    const std::size_t n = r.size();
    std::vector<double> w(n, 0.0);
    auto panel = [&](std::size_t i0, double a, double b) {
        std::array<double, 3> x = {r[i0] - a, r[i0 + 1] - a, r[i0 + 2] - a};
        std::array<double, 3> out = {0.0, 0.0, 0.0};
        quadratic_panel(p, a, b - a, x, out);
        for (int i = 0; i < 3; ++i) w[i0 + i] += out[i];
    };
    if (p >= 0) panel(0, 0.0, r[0]);
    const std::size_t cells = n - 1;
    std::size_t j = 0;
    for (; j + 2 <= cells; j += 2) panel(j, r[j], r[j + 2]);
    if (j < cells) panel(n - 3, r[n - 2], r[n - 1]);
    return w;
}

} // namespace

double shifted_moment(int p, int k, double a, double h) {
    if (h <= 0.0) return 0.0;
    if (p >= 0) {
        double s = 0.0;
        double apow = std::pow(a, p);
        const double inva = a > 0.0 ? 1.0 / a : 0.0;
        for (int m = 0; m <= p; ++m) {
            double term;
            if (a > 0.0) {
                term = binomial(p, m) * apow * std::pow(h, m + k + 1) / (m + k + 1);
                apow *= inva;
            } else {
                term = (m == p) ? std::pow(h, p + k + 1) / (p + k + 1) : 0.0;
            }
            s += term;
        }
        return s;
    }
    if (p != -1) throw Error(errc::invalid_argument, "shifted_moment supports p >= -1");
    if (a <= 0.0) throw Error(errc::domain, "integral of r^-1 is singular at the origin");
    if (h < 0.5 * a) {
        double s = 0.0;
        for (std::size_t i = 0; i < kGaussX.size(); ++i) {
            const double t = kGaussX[i] * h;
            s += kGaussW[i] * std::pow(t, k) / (a + t);
        }
        return s * h;
    }
    double I = std::log1p(h / a);
    for (int m = 1; m <= k; ++m) I = std::pow(h, m) / m - a * I;
    return I;
}

double moment(int p, double a, double b) { return shifted_moment(p, 0, a, b - a); }

RadialGrid::RadialGrid(int N, std::vector<double> nodes, Grading grading)
    : N_(N), r_(std::move(nodes)), grading_(grading) {
    if (N_ < 2) throw Error(errc::invalid_argument, "dimension N must be >= 2");
    if (r_.size() < 4) throw Error(errc::invalid_argument, "grid needs at least 4 nodes");
    double prev = 0.0;
    for (double x : r_) {
        if (!(x > prev) || x > 1.0) throw Error(errc::invalid_argument, "grid nodes must increase strictly in (0,1]");
        prev = x;
    }
    if (r_.back() != 1.0) throw Error(errc::invalid_argument, "last grid node must be exactly 1");
    w_ = product_weights(r_, N_ - 1);
}

std::vector<double> RadialGrid::weights(int p) const {
    if (p == N_ - 1) return w_;
    return product_weights(r_, p);
}

double RadialGrid::integrate(std::span<const double> phi) const {
    if (phi.size() != r_.size()) throw Error(errc::grid_mismatch, "integrand size does not match grid");
    double s = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) s += w_[j] * phi[j];
    return s;
}

double RadialGrid::integrate(std::span<const double> phi, int p) const {
    if (phi.size() != r_.size()) throw Error(errc::grid_mismatch, "integrand size does not match grid");
    const auto w = weights(p);
    double s = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) s += w[j] * phi[j];
    return s;
}

std::vector<std::size_t> RadialGrid::coarse_indices() const {
    std::vector<std::size_t> idx;
    const std::size_t n = r_.size();
    for (std::size_t j = (n - 1) % 2; j < n; j += 2) idx.push_back(j);
    return idx;
}

RadialGrid RadialGrid::coarsened() const {
    std::vector<double> c;
    for (std::size_t j : coarse_indices()) c.push_back(r_[j]);
    return RadialGrid(N_, std::move(c), grading_);
}

bool RadialGrid::same_nodes(const RadialGrid& other) const { return N_ == other.N_ && r_ == other.r_; }

std::string RadialGrid::describe() const {
    std::ostringstream os;
    os << "N=" << N_ << " n=" << r_.size() << ' ';
    if (grading_.kind == Grading::Kind::uniform)
        os << "uniform";
    else
        os << "graded(" << grading_.beta << ')';
    return os.str();
}

RadialGrid make_grid(int N, int n, Grading grading) {
    if (N < 2) throw Error(errc::invalid_argument, "dimension N must be >= 2");
    if (n < 16) throw Error(errc::invalid_argument, "grid needs n >= 16 nodes");
    double beta = grading.kind == Grading::Kind::uniform ? 1.0 : grading.beta;
    if (!(beta >= 1.0)) throw Error(errc::invalid_argument, "grading exponent beta must be >= 1");
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) r[j - 1] = std::pow(static_cast<double>(j) / n, beta);
    r.back() = 1.0;
    return RadialGrid(N, std::move(r), grading);
}

std::vector<double> lumped_masses(const RadialGrid& grid, int p, bool include_core) {
    const auto& r = grid.nodes();
    const std::size_t n = r.size();
    std::vector<double> m(n, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double h = r[j + 1] - r[j];
        const double mid = r[j] + 0.5 * h;
        m[j] += shifted_moment(p, 0, r[j], 0.5 * h);
        m[j + 1] += shifted_moment(p, 0, mid, r[j + 1] - mid);
    }
    if (include_core) {
        if (p < 0) throw Error(errc::domain, "core mass needs a nonnegative weight exponent");
        m[0] += shifted_moment(p, 0, 0.0, r[0]);
    }
    return m;
}

std::vector<double> cell_stiffness(const RadialGrid& grid, int p) {
    const auto& r = grid.nodes();
    std::vector<double> a(r.size() - 1);
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
        const double h = r[j + 1] - r[j];
        a[j] = shifted_moment(p, 0, r[j], h) / (h * h);
    }
    return a;
}

} // namespace vortexlab
