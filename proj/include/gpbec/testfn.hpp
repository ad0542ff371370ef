#pragma once

#include "gpbec/energy.hpp"
#include "gpbec/townes.hpp"

namespace gpbec {

/// Parameters of the concentrating trial state
/// u_tau = (A tau / ||w||_2) phi(|x-x_tau|/R_tau) w(tau(x-x_tau)) e^{i Omega x.x_tau^perp/2}
/// with cutoff radius R_tau = M ln(tau) / tau.
struct TrialParams {
    double tau = 5.0;
    Vec2 x_tau{0.0, 0.0};
    double M = 4.0;
    const TownesProfile* profile = nullptr;

    double cutoff_radius() const { return M * std::log(tau) / tau; }
};

/// Normalized trial state supported in the ball of radius 2 R_tau.
ComplexField build_trial(const TrialParams& params, GridPtr grid, double Omega);

EnergyBreakdown trial_energy(const TrialParams& params, GridPtr grid, double a,
                             const PotentialSpec& pot);

/// Scans 30 log-spaced tau around lambda (a*-a)^{-1/4} (factor 4 each way)
/// and returns the best resolvable trial bound; ties go to the smaller tau.
std::pair<double, double> optimal_upper_bound(GridPtr grid, const TownesProfile& profile,
                                              double a, const PotentialSpec& pot);

/// Center for the trial state: the V_Omega minimizer, pulled 2 R_tau inward
/// along the outward normal when the minimum sits on the boundary
/// (disk and rectangle only).
Vec2 trial_center(const DomainSpec& domain, const PotentialSpec& pot, double r_tau);

}  // namespace gpbec
