#pragma once

#include <span>
#include <vector>

#include "gpbec/minimize.hpp"

namespace gpbec {

/// Square blow-up window |y|_inf <= half_width with uniform spacing h,
/// centered on the rescaled maximum point.
struct BlowupWindow {
    int n = 0;         // nodes per axis
    double h = 0.0;    // spacing in blow-up coordinates
    double half_width = 0.0;
    std::vector<cplx> values;  // row-major, y outer
    bool clipped = false;      // window exceeded D (tail region, values ~ 0)

    int idx(int i, int j) const { return j * n + i; }
    double coord(int i) const { return -half_width + h * i; }
};

/// Per-a asymptotics row comparing solver output to the blow-up limits.
struct BlowupRecord {
    double a = 0.0;
    double e_a = 0.0;             // solver energy
    double scaled_energy = 0.0;   // e(a) (a*-a)^{-1/2}
    double mu_eps2 = 0.0;         // mu_a eps_a^2
    double eps = 0.0;             // eps_a
    double eps_predicted = 0.0;   // (a*-a)^{1/4} / lambda
    Vec2 x_max{};
    double x_scaled = 0.0;        // |x_a| (a*-a)^{-1/4}
    double theta = 0.0;           // aligning phase in [0, 2*pi)
    double profile_linf = 0.0;    // sup |sqrt(a*) w_a - w|
    double rotation_scaled = 0.0; // |Omega int y^perp.(i w_a, grad w_a)| / eps^2
    double imag_l2 = 0.0;         // L2 norm of Im w_a on the window
    double mass_window = 0.0;     // int |w_a|^2 over the window (-> 1)
    double kinetic_window = 0.0;  // int |grad w_a|^2 over the window (-> 1)
    bool window_clipped = false;
};

/// Global phase minimizing the L2 distance of e^{i theta} v to the real
/// reference: theta = -arg(sum v w_ref). The imaginary part of the aligned
/// field is exactly orthogonal to w_ref.
std::pair<double, std::vector<cplx>> phase_align(std::span<const cplx> v,
                                                 std::span<const double> w_ref);

/// Resamples the minimizer onto the blow-up window (bicubic), removes the
/// rotation gauge factor, scales by eps_a, and phase-aligns against
/// w/sqrt(a*). Fills the profile-comparison fields of the record.
std::pair<BlowupWindow, BlowupRecord> rescale_profile(const MinimizeResult& result,
                                                      const TownesProfile& profile,
                                                      double a, const PotentialSpec& pot);

/// One record per converged sweep entry; requires a single (Lambda, Omega)
/// regime and strictly increasing a.
std::vector<BlowupRecord> blowup_metrics(const std::vector<MinimizeResult>& results,
                                         const TownesProfile& profile,
                                         const PotentialSpec& pot);

}  // namespace gpbec
