#include "oracles.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gpbec/ops.hpp"

namespace gpbec::testing {

namespace {

struct WV {
    double w, v;
};

WV rk4_step(double r, WV s, double dr) {
    auto f = [](double rr, WV q) -> WV { return {q.v, q.w - q.w * q.w * q.w - q.v / rr}; };
    const WV k1 = f(r, s);
    const WV k2 = f(r + 0.5 * dr, {s.w + 0.5 * dr * k1.w, s.v + 0.5 * dr * k1.v});
    const WV k3 = f(r + 0.5 * dr, {s.w + 0.5 * dr * k2.w, s.v + 0.5 * dr * k2.v});
    const WV k4 = f(r + dr, {s.w + dr * k3.w, s.v + dr * k3.v});
    return {s.w + dr / 6.0 * (k1.w + 2 * k2.w + 2 * k3.w + k4.w),
            s.v + dr / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

WV start(double w0, double r) {
    const double c = 0.25 * (w0 - w0 * w0 * w0);
    return {w0 + c * r * r, 2.0 * c * r};
}

}  // namespace

int shoot_oracle(double w0, double r_max, double dr) {
    double r = dr;
    WV s = start(w0, r);
    while (r < r_max) {
        s = rk4_step(r, s, dr);
        r += dr;
        if (!std::isfinite(s.w) || s.w <= 0.0) return 1;
        if (s.v >= 0.0 && s.w >= 1.0) return 0;
    }
    return 2;
}

RadialOracle townes_oracle(double dr) {
    const double horizon = 40.0;
    double lo = 1.0, hi = 3.0;
    // verify the scan bracket before bisecting
    while (shoot_oracle(lo, horizon, dr) != 0) lo -= 0.2;
    while (shoot_oracle(hi, horizon, dr) != 1) hi += 0.2;
    while (hi - lo > 1e-11) {
        const double mid = 0.5 * (lo + hi);
        const int c = shoot_oracle(mid, horizon, dr);
        if (c == 1)
            hi = mid;
        else if (c == 0)
            lo = mid;
        else
            break;
    }
    const double w0 = 0.5 * (lo + hi);

    // final trajectory + trapezoid moments up to the tail-matching radius
    double r = dr;
    WV s = start(w0, r);
    double m0 = 0.5 * w0 * w0 * r * r;  // series integral of w^2 r on [0, r]
    double m2 = 0.25 * w0 * w0 * r * r * r * r;
    double g2 = 0.0, q4 = 0.5 * std::pow(w0, 4) * r * r;
    auto accum = [&](double rr, WV a, WV b) {
        const double ra = rr, rb = rr + dr;
        m0 += 0.5 * dr * (a.w * a.w * ra + b.w * b.w * rb);
        m2 += 0.5 * dr * (a.w * a.w * ra * ra * ra + b.w * b.w * rb * rb * rb);
        g2 += 0.5 * dr * (a.v * a.v * ra + b.v * b.v * rb);
        q4 += 0.5 * dr * (std::pow(a.w, 4) * ra + std::pow(b.w, 4) * rb);
    };
    double r_match = 0.0, w_match = 0.0;
    while (r < horizon) {
        const WV next = rk4_step(r, s, dr);
        if (next.w < 2e-5 || next.v >= 0.0 || next.w <= 0.0) {
            r_match = r;
            w_match = s.w;
            break;
        }
        accum(r, s, next);
        s = next;
        r += dr;
    }
    const double c = w_match * std::sqrt(r_match) * std::exp(r_match);
    // closed-form tails (trapezoid on a fine mesh)
    auto tail = [&](auto f) {
        double acc = 0.0;
        const int n = 40000;
        const double L = 30.0, h = L / n;
        for (int k = 0; k < n; ++k) {
            const double ra = r_match + k * h, rb = ra + h;
            acc += 0.5 * h * (f(ra) + f(rb));
        }
        return acc;
    };
    m0 += tail([&](double rr) { return c * c * std::exp(-2 * rr); });
    m2 += tail([&](double rr) { return c * c * rr * rr * std::exp(-2 * rr); });
    g2 += tail([&](double rr) {
        const double q = 1.0 + 0.5 / rr;
        return c * c * q * q * std::exp(-2 * rr);
    });
    q4 += tail([&](double rr) {
        const double w = c * std::exp(-rr) / std::sqrt(rr);
        return w * w * w * w * rr;
    });

    const double two_pi = 2.0 * std::acos(-1.0);
    RadialOracle o;
    o.w0 = w0;
    o.a_star = two_pi * m0;
    o.i2 = two_pi * m2;
    o.norm_grad2 = two_pi * g2;
    o.norm_l4 = two_pi * q4;
    return o;
}

double bessel_j0_first_zero() {
    double lo = 2.0, hi = 3.0;
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (std::cyl_bessel_j(0.0, lo) * std::cyl_bessel_j(0.0, mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// CG for (-lap + V) z = b on interior nodes (operator is SPD for V >= 0).
ComplexField schrodinger_cg(const ComplexField& b, const PotentialSpec& pot, double tol) {
    const Grid& g = *b.grid;
    auto apply = [&](const ComplexField& x) {
        ComplexField y = laplacian_apply(x);
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) {
                const int k = g.idx(i, j);
                if (!g.interior_flat(k)) continue;
                y.values[k] = -y.values[k] + pot.V(g.node(i, j)) * x.values[k];
            }
        return y;
    };
    auto dot = [&](const ComplexField& a, const ComplexField& c) {
        KahanSum s;
        for (int k = 0; k < g.size(); ++k)
            if (g.interior_flat(k))
                s.add(a.values[k].real() * c.values[k].real() +
                      a.values[k].imag() * c.values[k].imag());
        return s.value();
    };
    ComplexField x(b.grid), r = b, p = b;
    double rho = dot(r, r);
    const double stop = tol * tol * rho;
    for (int it = 0; it < 20000 && rho > stop; ++it) {
        ComplexField Ap = apply(p);
        const double alpha = rho / dot(p, Ap);
        for (int k = 0; k < g.size(); ++k) {
            if (!g.interior_flat(k)) continue;
            x.values[k] += alpha * p.values[k];
            r.values[k] -= alpha * Ap.values[k];
        }
        const double rho2 = dot(r, r);
        const double beta = rho2 / rho;
        rho = rho2;
        for (int k = 0; k < g.size(); ++k)
            if (g.interior_flat(k)) p.values[k] = r.values[k] + beta * p.values[k];
    }
    return x;
}

}  // namespace

EigenPair ground_state_oracle(GridPtr grid, const PotentialSpec& pot, int iters,
                              double cg_tol) {
    const Grid& g = *grid;
    ComplexField u(grid);
    for (int k = 0; k < g.size(); ++k)
        if (g.interior_flat(k)) u.values[k] = 1.0;
    normalize(u);
    for (int it = 0; it < iters; ++it) {
        u = schrodinger_cg(u, pot, cg_tol);
        normalize(u);
    }
    // Rayleigh quotient via the same operator
    ComplexField Hu = laplacian_apply(u);
    KahanSum s;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const int k = g.idx(i, j);
            if (!g.interior_flat(k)) continue;
            const cplx h = -Hu.values[k] + pot.V(g.node(i, j)) * u.values[k];
            s.add(h.real() * u.values[k].real() + h.imag() * u.values[k].imag());
        }
    EigenPair e;
    e.mu = g.cell_area() * s.value();
    e.u = std::move(u);
    return e;
}

ComplexField random_smooth_field(GridPtr grid, std::uint64_t seed, int n_bumps,
                                 double sigma_min, double sigma_max, bool complex_amp,
                                 double max_wavenumber) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Grid& g = *grid;
    const auto [bx0, bx1, by0, by1] = g.domain().bounding_box();

    struct Bump {
        Vec2 c;
        double sigma;
        cplx amp;
    };
    std::vector<Bump> bumps(n_bumps);
    for (auto& b : bumps) {
        b.c = {bx0 + (bx1 - bx0) * (0.2 + 0.6 * uni(rng)),
               by0 + (by1 - by0) * (0.2 + 0.6 * uni(rng))};
        b.sigma = sigma_min + (sigma_max - sigma_min) * uni(rng);
        b.amp = complex_amp ? cplx{2 * uni(rng) - 1, 2 * uni(rng) - 1}
                            : cplx{2 * uni(rng) - 1, 0.0};
    }
    const Vec2 kvec = {max_wavenumber * (2 * uni(rng) - 1),
                       max_wavenumber * (2 * uni(rng) - 1)};

    ComplexField f(std::move(grid));
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const int k = g.idx(i, j);
            if (!g.interior_flat(k)) continue;
            const Vec2 p = g.node(i, j);
            cplx acc{};
            for (const Bump& b : bumps)
                acc += b.amp * std::exp(-(p - b.c).norm2() / (2 * b.sigma * b.sigma));
            if (complex_amp && max_wavenumber > 0.0)
                acc *= std::polar(1.0, dot(kvec, p));
            f.values[k] = acc;
        }
    return f;
}

}  // namespace gpbec::testing
