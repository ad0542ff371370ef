#pragma once

#include <cstdint>

#include "gpbec/energy.hpp"
#include "gpbec/grid.hpp"

// Independent brute-force oracles for the test suites. These deliberately
// avoid the library's solver paths: fixed-step RK4 instead of adaptive RK45,
// trapezoid moments instead of integrated ones, inverse iteration instead of
// gradient flow.
namespace gpbec::testing {

struct RadialOracle {
    double w0 = 0.0;
    double a_star = 0.0;
    double i2 = 0.0;
    double norm_grad2 = 0.0;
    double norm_l4 = 0.0;
};

/// Shooting + bisection for the ground-state radial profile at fixed step dr.
RadialOracle townes_oracle(double dr);

/// Classification of a single trajectory with the fixed-step integrator:
/// 0 = stays positive and grows, 1 = crosses zero, 2 = decays to r_max.
int shoot_oracle(double w0, double r_max, double dr);

/// First positive zero of J_0 via bisection on std::cyl_bessel_j.
double bessel_j0_first_zero();

struct EigenPair {
    ComplexField u;
    double mu = 0.0;
};

/// Ground state of -lap + V by inverse iteration (Omega must be zero).
EigenPair ground_state_oracle(GridPtr grid, const PotentialSpec& pot, int iters,
                              double cg_tol);

/// Sum of random Gaussian bumps supported inside D, optionally complex with
/// a mild global phase winding; exterior nodes are exact zeros.
ComplexField random_smooth_field(GridPtr grid, std::uint64_t seed, int n_bumps,
                                 double sigma_min, double sigma_max, bool complex_amp,
                                 double max_wavenumber);

}  // namespace gpbec::testing
