#include "gpbec/minimize.hpp"

#include <cmath>
#include <random>

#include "gpbec/interp.hpp"

namespace gpbec {

namespace detail {

namespace {

// y = (I - dt lap) x on interior nodes.
void apply_helmholtz(const ComplexField& x, double dt, ComplexField& y) {
    const Grid& g = *x.grid;
    const double ax = dt / (g.hx() * g.hx());
    const double ay = dt / (g.hy() * g.hy());
    const double diag = 1.0 + 2.0 * ax + 2.0 * ay;
    const cplx* v = x.values.data();
    const int nx = g.nx();
    for (int j = 1; j < g.ny() - 1; ++j) {
        for (int i = 1; i < nx - 1; ++i) {
            const int k = j * nx + i;
            if (!g.interior_flat(k)) continue;
            y.values[k] =
                diag * v[k] - ax * (v[k - 1] + v[k + 1]) - ay * (v[k - nx] + v[k + nx]);
        }
    }
}

double dot_re(const Grid& g, const ComplexField& a, const ComplexField& b) {
    KahanSum s;
    for (int k = 0; k < g.size(); ++k)
        if (g.interior_flat(k))
            s.add(a.values[k].real() * b.values[k].real() +
                  a.values[k].imag() * b.values[k].imag());
    return s.value();
}

}  // namespace

ComplexField helmholtz_cg(const ComplexField& rhs, double dt, double rel_tol,
                          const ComplexField* guess) {
    const Grid& g = *rhs.grid;
    ComplexField x = guess ? *guess : rhs;
    ComplexField r(rhs.grid), p(rhs.grid), Ap(rhs.grid);

    apply_helmholtz(x, dt, Ap);
    for (int k = 0; k < g.size(); ++k)
        if (g.interior_flat(k)) r.values[k] = rhs.values[k] - Ap.values[k];
    p = r;
    double rho = dot_re(g, r, r);
    const double rhs_norm = std::sqrt(dot_re(g, rhs, rhs));
    const double stop = rel_tol * std::max(rhs_norm, 1e-300);

    const int max_iter = 1000 + 4 * static_cast<int>(std::sqrt(double(g.n_interior())));
    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(rho) <= stop) return x;
        apply_helmholtz(p, dt, Ap);
        const double alpha = rho / dot_re(g, p, Ap);
        for (int k = 0; k < g.size(); ++k) {
            if (!g.interior_flat(k)) continue;
            x.values[k] += alpha * p.values[k];
            r.values[k] -= alpha * Ap.values[k];
        }
        const double rho_next = dot_re(g, r, r);
        const double beta = rho_next / rho;
        rho = rho_next;
        for (int k = 0; k < g.size(); ++k)
            if (g.interior_flat(k)) p.values[k] = r.values[k] + beta * p.values[k];
    }
    fail("linear-solve", "conjugate gradient failed to converge");
}

Vec2 vomega_center(const Grid& grid, const PotentialSpec& pot) {
    const double c1 = (pot.zero_potential ? 0.0 : 1.0) - 0.25 * pot.Omega * pot.Omega;
    const double c2 =
        (pot.zero_potential ? 0.0 : pot.Lambda) - 0.25 * pot.Omega * pot.Omega;
    if (c1 >= 0.0 && c2 >= 0.0 && grid.domain().contains({0.0, 0.0})) return {0.0, 0.0};
    // V_Omega minimizes on the boundary; fall back to the best interior node.
    Vec2 best{};
    double vbest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i)
            if (grid.interior(i, j)) {
                const double v = pot.V_omega(grid.node(i, j));
                if (v < vbest) {
                    vbest = v;
                    best = grid.node(i, j);
                }
            }
    if (!std::isfinite(vbest)) fail("invalid-domain", "grid has no interior nodes");
    return best;
}

}  // namespace detail

ComplexField initial_field(GridPtr grid, const TownesProfile& profile, double a,
                           const PotentialSpec& pot, std::uint64_t seed) {
    const double lambda = lambda_param(profile, pot.Lambda);
    const double gap = profile.a_star - a;
    if (!(gap > 0.0)) fail("supercritical-rejected", "initial_field requires a < a*");
    const double tau0 = std::max(1.0, lambda * std::pow(gap, -0.25));
    const Vec2 center = detail::vomega_center(*grid, pot);

    ComplexField f = interp_to_grid(profile, std::move(grid), tau0, center);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        const double amp = 1e-2 * linf(f);
        const Grid& g = *f.grid;
        for (int k = 0; k < g.size(); ++k) {
            if (!g.interior_flat(k)) continue;
            f.values[k] += amp * cplx{uni(rng), uni(rng)};
        }
    }
    normalize(f);
    return f;
}

namespace {

struct StepOutput {
    ComplexField next;
    double mu_hat = 0.0;
    double residual = 0.0;  // EL residual of the *input* field
};

// Shared core of flow_step / solve: one energy-gradient evaluation serves
// both the step right-hand side and the residual diagnostic.
StepOutput flow_step_core(const ComplexField& u, double a, const PotentialSpec& pot,
                          double dt, double lin_tol) {
    const Grid& g = *u.grid;
    const ComplexField grad = energy_gradient(u, a, pot);
    const ComplexField lap = laplacian_apply(u);

    KahanSum mu_acc, res_acc;
    for (int k = 0; k < g.size(); ++k) {
        if (!g.interior_flat(k)) continue;
        mu_acc.add(grad.values[k].real() * u.values[k].real() +
                   grad.values[k].imag() * u.values[k].imag());
    }
    const double mu_hat = g.cell_area() * mu_acc.value();

    ComplexField rhs(u.grid);
    for (int k = 0; k < g.size(); ++k) {
        if (!g.interior_flat(k)) continue;
        const cplx resid = grad.values[k] - mu_hat * u.values[k];
        res_acc.add(std::norm(resid));
        // explicit part: grad + lap = V u + i Omega x^perp . grad u - a|u|^2 u
        rhs.values[k] = u.values[k] - dt * (grad.values[k] + lap.values[k] -
                                            mu_hat * u.values[k]);
    }

    StepOutput out;
    out.mu_hat = mu_hat;
    out.residual = std::sqrt(g.cell_area() * res_acc.value());
    out.next = detail::helmholtz_cg(rhs, dt, lin_tol, &u);
    normalize(out.next);
    return out;
}

Vec2 subnode_peak(const ComplexField& u, int& n_local_max) {
    const Grid& g = *u.grid;
    std::vector<double> mod(g.size(), 0.0);
    for (int k = 0; k < g.size(); ++k) mod[k] = std::abs(u.values[k]);

    int ibest = 1, jbest = 1;
    double best = -1.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (g.interior(i, j) && mod[g.idx(i, j)] > best) {
                best = mod[g.idx(i, j)];
                ibest = i;
                jbest = j;
            }

    n_local_max = 0;
    const double floor_val = 0.1 * best;
    for (int j = 1; j < g.ny() - 1; ++j) {
        for (int i = 1; i < g.nx() - 1; ++i) {
            const int k = g.idx(i, j);
            if (!g.interior_flat(k) || mod[k] <= floor_val) continue;
            const double c = mod[k];
            bool is_max = true;
            for (int dj = -1; dj <= 1 && is_max; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    if (mod[g.idx(i + di, j + dj)] >= c) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max) ++n_local_max;
        }
    }

    // quadratic vertex fit along each axis
    auto offset = [&](double fm, double f0, double fp, double h) {
        const double denom = fm - 2.0 * f0 + fp;
        if (denom == 0.0) return 0.0;
        const double d = 0.5 * (fm - fp) / denom;
        return std::clamp(d, -0.5, 0.5) * h;
    };
    Vec2 peak = g.node(ibest, jbest);
    if (ibest > 0 && ibest < g.nx() - 1)
        peak.x += offset(mod[g.idx(ibest - 1, jbest)], best, mod[g.idx(ibest + 1, jbest)],
                         g.hx());
    if (jbest > 0 && jbest < g.ny() - 1)
        peak.y += offset(mod[g.idx(ibest, jbest - 1)], best, mod[g.idx(ibest, jbest + 1)],
                         g.hy());
    return peak;
}

MinimizeResult run_flow(const ComplexField& u0, double a, const PotentialSpec& pot,
                        const SolverConfig& config) {
    config.validate();
    const Grid& g = *u0.grid;
    const double h = std::max(g.hx(), g.hy());
    const double kinetic_cap = 0.1 * std::pow(std::acos(-1.0) / h, 2);

    ComplexField u = u0;
    EnergyBreakdown eb = gp_energy(u, a, pot);
    if (eb.kinetic > kinetic_cap)
        fail("under-resolved",
             "kinetic energy exceeds the grid collapse guard; refine the grid");

    double dt = config.dt;
    int consecutive_down = 0;
    std::vector<double> window;  // last accepted energies
    window.push_back(eb.total);

    double residual = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iter = 0;

    while (iter < config.max_iter) {
        ++iter;
        StepOutput st = flow_step_core(u, a, pot, dt, config.linear_solver_tol);
        residual = st.residual;

        const EnergyBreakdown eb_new = gp_energy(st.next, a, pot);
        if (eb_new.total - eb.total > 1e-12 * std::abs(eb.total)) {
            dt *= 0.5;
            consecutive_down = 0;
            if (dt < 1e-12 * config.dt) break;  // stalled at rounding level
            continue;
        }

        u = std::move(st.next);
        eb = eb_new;
        if (++consecutive_down >= 10) {
            dt = std::min(2.0 * dt, config.dt);
            consecutive_down = 0;
        }
        if (eb.kinetic > kinetic_cap)
            fail("under-resolved",
                 "kinetic energy exceeds the grid collapse guard; refine the grid");

        window.push_back(eb.total);
        if (window.size() > 11) window.erase(window.begin());
        if (window.size() == 11) {
            const double change =
                std::abs(window.front() - window.back()) / std::max(std::abs(eb.total), 1e-300);
            if (change <= config.tol_energy && residual <= config.tol_residual) {
                converged = true;
                break;
            }
        }
    }

    MinimizeResult res;
    res.a = a;
    res.pot = pot;
    res.field = std::move(u);
    res.breakdown = eb;
    res.mu = lagrange_multiplier(eb.total, res.field, a);
    res.epsilon = 1.0 / std::sqrt(eb.kinetic);
    res.x_max = subnode_peak(res.field, res.n_local_max);
    res.iterations = iter;
    res.el_residual = el_residual(res.field, a, res.mu, pot);
    res.converged = converged || res.el_residual <= config.tol_residual;
    return res;
}

}  // namespace

ComplexField flow_step(const ComplexField& u, double a, const PotentialSpec& pot,
                       double dt, double linear_solver_tol) {
    if (!(dt > 0.0)) fail("invalid-parameter", "flow_step needs dt > 0");
    return flow_step_core(u, a, pot, dt, linear_solver_tol).next;
}

MinimizeResult solve(GridPtr grid, const TownesProfile& profile, double a,
                     const PotentialSpec& pot, const SolverConfig& config) {
    if (!(a >= 0.0) || a >= profile.a_star)
        fail("supercritical-rejected",
             "no minimizer exists for a >= a*; solve requires 0 <= a < a*");
    const ComplexField u0 = initial_field(grid, profile, a, pot, config.seed);
    return run_flow(u0, a, pot, config);
}

std::vector<MinimizeResult> continuation_sweep(GridPtr grid, const TownesProfile& profile,
                                               const std::vector<double>& a_list,
                                               const PotentialSpec& pot,
                                               const SolverConfig& config) {
    for (size_t i = 0; i < a_list.size(); ++i) {
        if (a_list[i] >= profile.a_star)
            fail("supercritical-rejected", "sweep entry >= a* rejected upfront");
        if (i > 0 && !(a_list[i] > a_list[i - 1]))
            fail("invalid-parameter", "sweep values must increase strictly");
    }

    std::vector<MinimizeResult> out;
    out.reserve(a_list.size());
    for (size_t i = 0; i < a_list.size(); ++i) {
        if (i == 0) {
            out.push_back(solve(grid, profile, a_list[i], pot, config));
            continue;
        }
        // Warm start: sharpen the previous minimizer by the ratio of
        // predicted blow-up scales (a*-a)^{1/4}; the 2D rescale
        // u(x) -> s u(c + s(x-c)) preserves mass.
        const double s = std::pow((profile.a_star - a_list[i - 1]) /
                                      (profile.a_star - a_list[i]),
                                  0.25);
        const ComplexField& prev = out.back().field;
        const Vec2 c = out.back().x_max;
        ComplexField guess(grid);
        const Grid& g = *grid;
        for (int j = 0; j < g.ny(); ++j)
            for (int i2 = 0; i2 < g.nx(); ++i2) {
                const int k = g.idx(i2, j);
                if (!g.interior_flat(k)) continue;
                const Vec2 p = c + (g.node(i2, j) - c) * s;
                guess.values[k] = s * sample_bicubic(prev, p);
            }
        normalize(guess);
        out.push_back(run_flow(guess, a_list[i], pot, config));
    }
    return out;
}

}  // namespace gpbec
