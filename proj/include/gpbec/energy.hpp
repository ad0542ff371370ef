#pragma once

#include "gpbec/grid.hpp"
#include "gpbec/ops.hpp"

namespace gpbec {

/// Harmonic trap V = x1^2 + Lambda*x2^2 rotating at velocity Omega; the
/// zero_potential flag switches to the V == 0 validation mode used by the
/// linear eigenvalue oracles.
struct PotentialSpec {
    double Lambda = 1.0;
    double Omega = 0.0;
    bool zero_potential = false;

    PotentialSpec() = default;
    PotentialSpec(double lambda, double omega, bool zero_pot = false)
        : Lambda(lambda), Omega(omega), zero_potential(zero_pot) {
        if (!(Lambda > 0.0)) fail("invalid-parameter", "Lambda must be positive");
        if (!(Omega >= 0.0)) fail("invalid-parameter", "Omega must be non-negative");
    }

    double V(Vec2 p) const {
        return zero_potential ? 0.0 : p.x * p.x + Lambda * p.y * p.y;
    }
    double V_omega(Vec2 p) const { return V(p) - 0.25 * Omega * Omega * p.norm2(); }
    /// Lambda > 1 and Omega <= 2: V_omega >= 0 with unique minimum at the origin.
    bool theorem_regime() const {
        return !zero_potential && Lambda > 1.0 && Omega <= 2.0;
    }
};

struct EnergyBreakdown {
    double kinetic = 0.0;           // int |grad u|^2
    double potential = 0.0;         // int V |u|^2
    double interaction = 0.0;       // (a/2) int |u|^4
    double rotation = 0.0;          // Omega int x^perp . (iu, grad u)
    double total = 0.0;             // kinetic + potential - interaction - rotation
    double magnetic_kinetic = 0.0;  // int |(grad - i Omega x^perp / 2) u|^2
    double v_omega_potential = 0.0; // int V_Omega |u|^2
};

/// Evaluates every term of the GP energy in one fixed-order pass. All
/// gradient-dependent terms share one forward-difference gradient, so the
/// harmonic-trap form and the magnetic completed-square form agree to
/// rounding and the exact variational gradient of the kinetic term is the
/// 5-point Laplacian.
EnergyBreakdown gp_energy(const ComplexField& u, double a, const PotentialSpec& pot);

/// mu = e - (a/2) int |u|^4; requires int |u|^2 = 1 within 1e-10.
double lagrange_multiplier(double e_value, const ComplexField& u, double a);

/// Exact discrete energy gradient: -lap(u) + V u + rotation term - a|u|^2 u,
/// zero on exterior nodes. The rotation term is the variational derivative of
/// the discrete momentum integral (skew-symmetric forward/backward average).
ComplexField energy_gradient(const ComplexField& u, double a, const PotentialSpec& pot);

/// L2 norm of -lap(u) + V u + i Omega x^perp . grad u - mu u - a|u|^2 u over
/// interior nodes, discretized identically to energy_gradient.
double el_residual(const ComplexField& u, double a, double mu, const PotentialSpec& pot);

/// Worst-node margin of |grad u|^2 - 2A.(iu,grad u) + A^2|u|^2 - |grad|u||^2
/// with A = (Omega/2) x^perp, centered gradients for both u and |u|.
double diamagnetic_check(const ComplexField& u, double Omega);

/// int u^4 / (int |grad u|^2 * int u^2) for a real field, with the same
/// discrete kinetic form as gp_energy.
double gn_check(const ComplexField& u);

}  // namespace gpbec
