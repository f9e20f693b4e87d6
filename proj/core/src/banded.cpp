#include "vortexlab/banded.hpp"

#include "vortexlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vortexlab {

double SymBand::get(std::size_t i, std::size_t j) const {
    if (i < j) std::swap(i, j);
    if (i - j > bw_) return 0.0;
    return a_[i * (bw_ + 1) + (i - j)];
}

void SymBand::add(std::size_t i, std::size_t j, double v) {
    if (i < j) std::swap(i, j);
    if (i - j > bw_ || i >= n_) throw Error(errc::invalid_argument, "SymBand::add outside band");
    a_[i * (bw_ + 1) + (i - j)] += v;
}

void SymBand::add_diagonal(std::span<const double> d, double scale) {
    for (std::size_t i = 0; i < n_; ++i) a_[i * (bw_ + 1)] += scale * d[i];
}

std::vector<double> SymBand::multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const double* row = &a_[i * (bw_ + 1)];
        y[i] += row[0] * x[i];
        for (std::size_t d = 1; d <= bw_ && d <= i; ++d) {
            y[i] += row[d] * x[i - d];
            y[i - d] += row[d] * x[i];
        }
    }
    return y;
}

double SymBand::quadratic_form(std::span<const double> x) const {
    const auto y = multiply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += x[i] * y[i];
    return s;
}

BandLDLT::BandLDLT(const SymBand& a) : n_(a.n_), bw_(a.bw_), l_(a.a_), d_(a.n_, 0.0) {
    const std::size_t w = bw_ + 1;
    for (std::size_t j = 0; j < n_; ++j) {
        double dj = l_[j * w];
        // graded meshes make diagonal entries span many decades, so the
        // breakdown test is relative to the row's own diagonal
        const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(dj), 1e-300);
        const std::size_t k0 = j > bw_ ? j - bw_ : 0;
        for (std::size_t k = k0; k < j; ++k) {
            const double ljk = l_[j * w + (j - k)];
            dj -= ljk * ljk * d_[k];
        }
        if (std::abs(dj) < tiny) {
            tiny_ = true;
            dj = dj < 0.0 ? -tiny : tiny;
        }
        d_[j] = dj;
        if (dj < 0.0) ++negatives_;
        const std::size_t iend = std::min(n_ - 1, j + bw_);
        for (std::size_t i = j + 1; i <= iend; ++i) {
            double v = l_[i * w + (i - j)];
            const std::size_t m0 = i > bw_ ? i - bw_ : 0;
            for (std::size_t k = m0; k < j; ++k) v -= l_[i * w + (i - k)] * l_[j * w + (j - k)] * d_[k];
            l_[i * w + (i - j)] = v / dj;
        }
    }
}

std::vector<double> BandLDLT::solve(std::span<const double> b) const {
    const std::size_t w = bw_ + 1;
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t k0 = i > bw_ ? i - bw_ : 0;
        for (std::size_t k = k0; k < i; ++k) x[i] -= l_[i * w + (i - k)] * x[k];
    }
    for (std::size_t i = 0; i < n_; ++i) x[i] /= d_[i];
    for (std::size_t ii = n_; ii-- > 0;) {
        const std::size_t iend = std::min(n_ - 1, ii + bw_);
        for (std::size_t k = ii + 1; k <= iend; ++k) x[ii] -= l_[k * w + (k - ii)] * x[k];
    }
    return x;
}

namespace {

SymBand shifted(const SymBand& a, std::span<const double> m, double sigma) {
    SymBand s = a;
    s.add_diagonal(m, -sigma);
    return s;
}

double rayleigh(const SymBand& a, std::span<const double> m, std::span<const double> x) {
    double num = a.quadratic_form(x);
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) den += m[i] * x[i] * x[i];
    return num / den;
}

} // namespace

std::size_t pencil_count_below(const SymBand& a, std::span<const double> m, double sigma) {
    return BandLDLT(shifted(a, m, sigma)).negative_pivots();
}

PencilEigen smallest_pencil_eigen(const SymBand& a, std::span<const double> m) {
    const std::size_t n = a.size();
    if (n == 0 || m.size() != n) throw Error(errc::eigensolver, "empty or mismatched pencil");
    for (double mi : m)
        if (!(mi > 0.0)) throw Error(errc::eigensolver, "mass matrix is not positive definite");

    // Gershgorin on diag(m)^{-1} A gives a lower bound; the Rayleigh quotient of
    // a constant vector gives an upper bound.
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        const std::size_t j0 = i > a.bandwidth() ? i - a.bandwidth() : 0;
        const std::size_t j1 = std::min(n - 1, i + a.bandwidth());
        for (std::size_t j = j0; j <= j1; ++j)
            if (j != i) off += std::abs(a.get(i, j));
        lo = std::min(lo, (a.get(i, i) - off) / m[i]);
    }
    std::vector<double> ones(n, 1.0);
    double hi = rayleigh(a, m, ones);
    hi += 1e-12 * (1.0 + std::abs(hi));
    if (!(lo <= hi)) lo = hi - 1.0;

    std::vector<std::pair<double, double>> trace;
    PencilEigen out;
    out.bisection_steps = 0;
    if (pencil_count_below(a, m, hi) < 1) {
        // the constant vector can sit exactly on the eigenvalue; widen
        hi += 1e-6 * (1.0 + std::abs(hi));
    }
    while (hi - lo > 1e-14 * std::max(1.0, std::abs(hi)) && out.bisection_steps < 400) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pencil_count_below(a, m, mid) >= 1)
            hi = mid;
        else
            lo = mid;
        ++out.bisection_steps;
        if (trace.size() < 64) trace.emplace_back(lo, hi);
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;

    // inverse iteration at a shift just below the bracket
    const double sigma = lo - 1e-9 * std::max(1.0, std::abs(lo));
    BandLDLT fact(shifted(a, m, sigma));
    std::vector<double> x(n, 1.0);
    for (int it = 0; it < 6; ++it) {
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = m[i] * x[i];
        x = fact.solve(rhs);
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += m[i] * x[i] * x[i];
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
        for (double& xi : x) xi /= nrm;
    }
    out.value = rayleigh(a, m, x);
    const auto ax = a.multiply(x);
    double res = 0.0, anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        res = std::max(res, std::abs(ax[i] - out.value * m[i] * x[i]));
        anorm = std::max(anorm, std::abs(a.get(i, i)));
    }
    out.residual = res / std::max(anorm, 1e-300);
    const bool inside = out.value >= lo - 1e-8 * (1.0 + std::abs(lo)) && out.value <= hi + 1e-8 * (1.0 + std::abs(hi));
    if (!std::isfinite(out.value) || !inside) {
        std::ostringstream os;
        os.precision(17);
        os << "{\"bracket\":[";
        for (std::size_t i = 0; i < trace.size(); ++i) os << (i ? "," : "") << '[' << trace[i].first << ',' << trace[i].second << ']';
        os << "],\"rayleigh\":" << (std::isfinite(out.value) ? out.value : 0.0) << '}';
        throw Error(errc::eigensolver, "inverse iteration left the bisection bracket", os.str());
    }
    out.vector = std::move(x);
    return out;
}

} // namespace vortexlab
