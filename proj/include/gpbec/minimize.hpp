#pragma once

#include <cstdint>
#include <vector>

#include "gpbec/energy.hpp"
#include "gpbec/townes.hpp"

namespace gpbec {

struct SolverConfig {
    double dt = 2e-3;                // pseudo-time step (upper bound; adapted)
    double tol_energy = 1e-11;       // relative energy change over 10 steps
    double tol_residual = 1e-6;      // Euler-Lagrange residual stop
    int max_iter = 50000;
    std::uint64_t seed = 0;          // 0 disables the random perturbation
    double linear_solver_tol = 1e-8; // inner CG relative residual

    void validate() const {
        if (!(dt > 0.0)) fail("invalid-parameter", "solver dt must be positive");
        if (!(tol_energy > 0.0 && tol_energy < 1.0) ||
            !(tol_residual > 0.0 && tol_residual < 1.0))
            fail("invalid-parameter", "solver tolerances must lie in (0, 1)");
        if (max_iter < 1) fail("invalid-parameter", "max_iter must be >= 1");
    }
};

struct MinimizeResult {
    ComplexField field;          // normalized minimizer
    EnergyBreakdown breakdown;
    double mu = 0.0;             // Lagrange multiplier e - (a/2) int |u|^4
    double epsilon = 0.0;        // kinetic^{-1/2}
    Vec2 x_max{};                // sub-node location of the peak of |u|
    int n_local_max = 0;         // strict local maxima above 10% of the peak
    int iterations = 0;
    double el_residual = 0.0;
    bool converged = false;
    double a = 0.0;
    PotentialSpec pot;  // regime the result was solved in
};

/// Normalized bump w(tau0 |x - c|) at the predicted concentration scale
/// tau0 = max(1, lambda (a*-a)^{-1/4}), centered at the V_Omega minimizer,
/// with an optional seeded complex perturbation of relative amplitude 1e-2.
ComplexField initial_field(GridPtr grid, const TownesProfile& profile, double a,
                           const PotentialSpec& pot, std::uint64_t seed);

/// One semi-implicit step of the normalized gradient flow:
/// (I - dt lap) v = u - dt (V u + i Omega x^perp . grad u - a|u|^2 u - mu u),
/// then renormalization. The Rayleigh-quotient shift mu makes discrete
/// Euler-Lagrange states exact fixed points.
ComplexField flow_step(const ComplexField& u, double a, const PotentialSpec& pot,
                       double dt, double linear_solver_tol);

MinimizeResult solve(GridPtr grid, const TownesProfile& profile, double a,
                     const PotentialSpec& pot, const SolverConfig& config);

/// Warm-started continuation toward a*: each solve starts from the previous
/// minimizer rescaled by the ratio of predicted blow-up scales.
std::vector<MinimizeResult> continuation_sweep(GridPtr grid, const TownesProfile& profile,
                                               const std::vector<double>& a_list,
                                               const PotentialSpec& pot,
                                               const SolverConfig& config);

namespace detail {
/// Interior conjugate-gradient solve of (I - dt lap) v = rhs.
ComplexField helmholtz_cg(const ComplexField& rhs, double dt, double rel_tol,
                          const ComplexField* guess);
Vec2 vomega_center(const Grid& grid, const PotentialSpec& pot);
}  // namespace detail

}  // namespace gpbec
