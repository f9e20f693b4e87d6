#pragma once

// Newton minimisation of discrete radial energies
//
//   E(u) = 1/2 sum_f sum_j a_{f,j} (u_{j+1,f} - u_{j,f})^2 + sum_{j<n-1} phi_j(u_j)
//
// with the last node held at fixed boundary values. Unknowns are interleaved
// node-major, so the Hessian is a symmetric band of width `fields`.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace vortexlab::detail {

constexpr int kMaxFields = 3;

struct LocalTerm {
    double value = 0.0;
    std::array<double, kMaxFields> grad{};
    std::array<std::array<double, kMaxFields>, kMaxFields> hess{};
};

struct EnergyProblem {
    std::size_t nodes = 0;
    int fields = 1;
    std::vector<std::vector<double>> stiffness;  // [field][cell]
    std::vector<std::vector<double>> mass;       // [field][node], residual scaling and regularisation
    std::vector<double> boundary;                // [field] values at the last node
    std::function<void(std::size_t, const double*, LocalTerm&)> local;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    std::string message;
};

double energy(const EnergyProblem& p, const std::vector<double>& u);
std::vector<double> gradient(const EnergyProblem& p, const std::vector<double>& u);
double scaled_residual(const EnergyProblem& p, const std::vector<double>& u);

// Damped Newton with inertia-controlled Hessian shifts, so every step is a
// descent direction and the iteration settles on a local minimiser.
NewtonReport minimise(const EnergyProblem& p, std::vector<double>& u, double tol, int max_iter);

} // namespace vortexlab::detail
