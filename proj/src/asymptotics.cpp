#include "gpbec/asymptotics.hpp"

#include <cmath>

#include "gpbec/interp.hpp"

namespace gpbec {

std::pair<double, std::vector<cplx>> phase_align(std::span<const cplx> v,
                                                 std::span<const double> w_ref) {
    if (v.size() != w_ref.size())
        fail("invalid-parameter", "phase_align needs matching sample sets");
    KahanSum sre, sim;
    for (size_t k = 0; k < v.size(); ++k) {
        sre.add(v[k].real() * w_ref[k]);
        sim.add(v[k].imag() * w_ref[k]);
    }
    const cplx s{sre.value(), sim.value()};
    if (std::abs(s) == 0.0)
        fail("alignment-degenerate", "field is orthogonal to the reference profile");
    double theta = -std::arg(s);
    if (theta < 0.0) theta += 2.0 * std::acos(-1.0);

    const cplx rot = std::polar(1.0, theta);
    std::vector<cplx> aligned(v.size());
    for (size_t k = 0; k < v.size(); ++k) aligned[k] = rot * v[k];
    return {theta, std::move(aligned)};
}

std::pair<BlowupWindow, BlowupRecord> rescale_profile(const MinimizeResult& result,
                                                      const TownesProfile& profile,
                                                      double a, const PotentialSpec& pot) {
    if (!result.converged)
        fail("precondition", "rescale_profile requires a converged result");

    BlowupWindow win;
    win.half_width = 12.0;
    win.h = 5.0 * profile.dr;
    win.n = 2 * static_cast<int>(std::round(win.half_width / win.h)) + 1;
    win.values.assign(static_cast<size_t>(win.n) * win.n, cplx{});

    const double eps = result.epsilon;
    const Vec2 xa = result.x_max;
    const DomainSpec& dom = result.field.grid->domain();
    win.clipped = !dom.contains_ball(xa, eps * win.half_width * std::sqrt(2.0));

    // w_a(y) = eps u_a(eps y + x_a) e^{-i eps Omega y.x_a^perp / 2}
    const Vec2 xap = xa.perp();
    std::vector<double> w_ref(win.values.size());
    const double inv_sqrt_astar = 1.0 / std::sqrt(profile.a_star);
    for (int j = 0; j < win.n; ++j) {
        for (int i = 0; i < win.n; ++i) {
            const Vec2 y{win.coord(i), win.coord(j)};
            const Vec2 p = xa + y * eps;
            const cplx u = dom.contains(p) ? sample_bicubic(result.field, p) : cplx{};
            const double gauge = -0.5 * eps * pot.Omega * dot(y, xap);
            win.values[win.idx(i, j)] = eps * u * std::polar(1.0, gauge);
            w_ref[win.idx(i, j)] = profile.eval(y.norm()) * inv_sqrt_astar;
        }
    }

    auto [theta, aligned] = phase_align(win.values, w_ref);
    win.values = std::move(aligned);

    BlowupRecord rec;
    rec.a = a;
    rec.eps = eps;
    rec.theta = theta;
    rec.x_max = xa;
    rec.window_clipped = win.clipped;

    const double cell = win.h * win.h;
    KahanSum msum, isum, ksum, rsum;
    double sup = 0.0;
    for (int j = 0; j < win.n; ++j) {
        for (int i = 0; i < win.n; ++i) {
            const int k = win.idx(i, j);
            const cplx wv = win.values[k];
            msum.add(std::norm(wv));
            isum.add(wv.imag() * wv.imag());
            sup = std::max(sup, std::abs(wv - w_ref[k]));
            if (i > 0 && i + 1 < win.n && j > 0 && j + 1 < win.n) {
                const cplx dx = (win.values[k + 1] - win.values[k - 1]) / (2.0 * win.h);
                const cplx dy =
                    (win.values[k + win.n] - win.values[k - win.n]) / (2.0 * win.h);
                ksum.add(std::norm(dx) + std::norm(dy));
                const Vec2 y{win.coord(i), win.coord(j)};
                rsum.add(-y.y * std::imag(std::conj(wv) * dx) +
                         y.x * std::imag(std::conj(wv) * dy));
            }
        }
    }
    rec.mass_window = cell * msum.value();
    rec.imag_l2 = std::sqrt(cell * isum.value());
    rec.kinetic_window = cell * ksum.value();
    rec.profile_linf = std::sqrt(profile.a_star) * sup;
    rec.rotation_scaled = std::abs(pot.Omega * cell * rsum.value()) / (eps * eps);
    return {std::move(win), rec};
}

std::vector<BlowupRecord> blowup_metrics(const std::vector<MinimizeResult>& results,
                                         const TownesProfile& profile,
                                         const PotentialSpec& pot) {
    for (size_t i = 0; i < results.size(); ++i) {
        const MinimizeResult& r = results[i];
        if (!r.converged) fail("inconsistent-sweep", "sweep contains unconverged results");
        if (r.pot.Lambda != pot.Lambda || r.pot.Omega != pot.Omega ||
            r.pot.zero_potential != pot.zero_potential)
            fail("inconsistent-sweep", "sweep mixes potential regimes");
        if (i > 0 && !(r.a > results[i - 1].a))
            fail("inconsistent-sweep", "sweep values of a must increase");
    }

    const double lambda = lambda_param(profile, pot.Lambda);
    std::vector<BlowupRecord> out;
    out.reserve(results.size());
    for (const MinimizeResult& r : results) {
        auto [win, rec] = rescale_profile(r, profile, r.a, pot);
        const double gap = profile.a_star - r.a;
        rec.e_a = r.breakdown.total;
        rec.scaled_energy = r.breakdown.total / std::sqrt(gap);
        rec.mu_eps2 = r.mu * r.epsilon * r.epsilon;
        rec.eps_predicted = std::pow(gap, 0.25) / lambda;
        rec.x_scaled = r.x_max.norm() / std::pow(gap, 0.25);
        out.push_back(rec);
    }
    return out;
}

}  // namespace gpbec
