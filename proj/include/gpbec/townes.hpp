#pragma once

#include <vector>

#include "gpbec/grid.hpp"
#include "gpbec/interp.hpp"

namespace gpbec {

enum class ShootOutcome { CrossesZero, StaysPositiveAndGrows, Decays };

struct ShootResult {
    ShootOutcome outcome;
    double r_event = 0.0;  // crossing / turning radius, r_max when Decays
};

/// Classifies the radial trajectory of w'' + w'/r - w + w^3 = 0 started at
/// w(0) = w0_trial, w'(0) = 0.
ShootResult shoot(double w0_trial, double r_max);

/// Ground-state radial profile with derived constants. The table covers
/// [0, r_max] with uniform spacing dr; beyond the matching radius r_tail the
/// entries follow the asymptotic c * r^{-1/2} e^{-r} form.
struct TownesProfile {
    std::vector<double> r_samples;
    std::vector<double> w_samples;
    std::vector<double> wp_samples;
    double dr = 0.0;
    double r_max = 0.0;

    double w0 = 0.0;          // w(0)
    double a_star = 0.0;      // squared L2 norm, 2*pi*int w^2 r dr
    double i2 = 0.0;          // int |x|^2 w^2 dx
    double norm_grad2 = 0.0;  // int |grad w|^2 dx
    double norm_l2 = 0.0;     // int w^2 dx (== a_star)
    double norm_l4 = 0.0;     // int w^4 dx

    double tail_c = 0.0;      // matched tail amplitude
    double r_tail = 0.0;      // matching radius

    /// w at arbitrary radius: monotone cubic on the table, asymptotic tail
    /// beyond r_max.
    double eval(double r) const;

    Pchip interp;  // built over (r_samples, w_samples)
};

TownesProfile solve_townes(double tol, double r_max);

/// lambda = [int V(x) w^2 dx]^{1/4} for V = x1^2 + Lambda*x2^2, using the
/// radial identity int x1^2 w^2 = int x2^2 w^2 = i2/2.
double lambda_param(const TownesProfile& profile, double Lambda);

/// Samples w(scale * |x - center|) on the grid, zero outside D.
ComplexField interp_to_grid(const TownesProfile& profile, GridPtr grid, double scale,
                            Vec2 center);

}  // namespace gpbec
