#include "gpbec/testfn.hpp"

#include <cmath>

namespace gpbec {

namespace {

// C1 ramp: 1 on [0,1], cos^2(pi(s-1)/2) on (1,2), 0 beyond.
double cutoff(double s) {
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const double c = std::cos(0.5 * std::acos(-1.0) * (s - 1.0));
    return c * c;
}

}  // namespace

ComplexField build_trial(const TrialParams& params, GridPtr grid, double Omega) {
    if (!params.profile) fail("invalid-parameter", "trial params need a Townes profile");
    if (!(params.tau > 1.0)) fail("invalid-parameter", "trial tau must exceed 1");
    const double r_tau = params.cutoff_radius();
    const Grid& g = *grid;
    if (!g.domain().contains_ball(params.x_tau, 2.0 * r_tau))
        fail("geometry", "trial support ball 2 R_tau does not fit inside the domain");
    if (params.tau * std::max(g.hx(), g.hy()) > 0.5)
        fail("resolution", "grid does not resolve the trial core (tau h > 1/2)");

    const TownesProfile& w = *params.profile;
    ComplexField f(std::move(grid));
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const int k = g.idx(i, j);
            if (!g.interior_flat(k)) continue;
            const Vec2 p = g.node(i, j);
            const Vec2 d = p - params.x_tau;
            const double rho = d.norm();
            if (rho >= 2.0 * r_tau) continue;
            const double amp = cutoff(rho / r_tau) * w.eval(params.tau * rho);
            if (amp == 0.0) continue;
            const double phase = 0.5 * Omega * dot(p, params.x_tau.perp());
            f.values[k] = std::polar(amp, phase);
        }
    }
    normalize(f);  // fixes the A_tau constant exactly
    return f;
}

EnergyBreakdown trial_energy(const TrialParams& params, GridPtr grid, double a,
                             const PotentialSpec& pot) {
    const ComplexField u = build_trial(params, std::move(grid), pot.Omega);
    return gp_energy(u, a, pot);
}

std::pair<double, double> optimal_upper_bound(GridPtr grid, const TownesProfile& profile,
                                              double a, const PotentialSpec& pot) {
    if (!(a > 0.0) || !(a < profile.a_star))
        fail("invalid-parameter", "optimal_upper_bound needs 0 < a < a*");
    const double lambda = lambda_param(profile, pot.Lambda);
    const double tau_hat = lambda * std::pow(profile.a_star - a, -0.25);

    double best_tau = 0.0;
    double best_energy = std::numeric_limits<double>::infinity();
    const int n = 30;
    for (int k = 0; k < n; ++k) {
        const double tau = tau_hat * std::pow(4.0, -1.0 + 2.0 * k / (n - 1.0));
        TrialParams params;
        params.tau = tau;
        params.profile = &profile;
        if (!(tau > 1.0)) continue;
        params.x_tau = trial_center(grid->domain(), pot, params.cutoff_radius());
        try {
            const double e = trial_energy(params, grid, a, pot).total;
            if (e < best_energy) {
                best_energy = e;
                best_tau = tau;
            }
        } catch (const Error& err) {
            if (err.kind() == "geometry" || err.kind() == "resolution") continue;
            throw;
        }
    }
    if (best_tau == 0.0)
        fail("resolution", "no tau in the scan produced a resolvable trial state");
    return {best_tau, best_energy};
}

Vec2 trial_center(const DomainSpec& domain, const PotentialSpec& pot, double r_tau) {
    const double c1 = (pot.zero_potential ? 0.0 : 1.0) - 0.25 * pot.Omega * pot.Omega;
    const double c2 =
        (pot.zero_potential ? 0.0 : pot.Lambda) - 0.25 * pot.Omega * pot.Omega;
    if (c1 >= 0.0 && c2 >= 0.0 && domain.contains({0.0, 0.0})) return {0.0, 0.0};

    // Boundary minimum: scan the boundary curve, then step 2 R_tau inward
    // along the outward normal.
    if (domain.kind == DomainSpec::Kind::Disk) {
        double best_v = std::numeric_limits<double>::infinity();
        Vec2 x0{}, n{};
        for (int k = 0; k < 3600; ++k) {
            const double th = 2.0 * std::acos(-1.0) * k / 3600;
            const Vec2 p = domain.center +
                           Vec2{domain.radius * std::cos(th), domain.radius * std::sin(th)};
            const double v = pot.V_omega(p);
            if (v < best_v) {
                best_v = v;
                x0 = p;
                n = {std::cos(th), std::sin(th)};
            }
        }
        return x0 - n * (2.0 * r_tau);
    }
    if (domain.kind == DomainSpec::Kind::Rectangle) {
        double best_v = std::numeric_limits<double>::infinity();
        Vec2 x0{}, n{};
        const int m = 2000;
        auto scan_edge = [&](Vec2 a, Vec2 b, Vec2 normal) {
            for (int k = 0; k <= m; ++k) {
                const double t = double(k) / m;
                const Vec2 p = a + (b - a) * t;
                const double v = pot.V_omega(p);
                if (v < best_v) {
                    best_v = v;
                    x0 = p;
                    n = normal;
                }
            }
        };
        scan_edge({domain.x_min, domain.y_min}, {domain.x_max, domain.y_min}, {0, -1});
        scan_edge({domain.x_min, domain.y_max}, {domain.x_max, domain.y_max}, {0, 1});
        scan_edge({domain.x_min, domain.y_min}, {domain.x_min, domain.y_max}, {-1, 0});
        scan_edge({domain.x_max, domain.y_min}, {domain.x_max, domain.y_max}, {1, 0});
        return x0 - n * (2.0 * r_tau);
    }
    fail("invalid-domain", "boundary trial centers are implemented for disk and rectangle");
}

}  // namespace gpbec
