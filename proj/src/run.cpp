#include "gpbec/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "gpbec/io.hpp"

namespace gpbec {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    const fs::path p = fs::path(dir) / name;
    std::ofstream os(p);
    if (!os) fail("io", "cannot open '" + p.string() + "' for writing");
    return os;
}

void csv_row(std::ostream& os, const std::vector<double>& vals) {
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i) os << ',';
        os << format_double(vals[i]);
    }
    os << '\n';
}

}  // namespace

TownesProfile run_townes(const RunConfig& config, const std::string& out_dir) {
    const TownesProfile p = solve_townes(config.townes_tol, config.townes_rmax);

    auto csv = open_out(out_dir, "townes.csv");
    csv << "r,w,w_prime\n";
    for (size_t k = 0; k < p.r_samples.size(); ++k)
        csv_row(csv, {p.r_samples[k], p.w_samples[k], p.wp_samples[k]});

    nlohmann::json j{{"w0", p.w0},           {"a_star", p.a_star},
                     {"i2", p.i2},           {"norm_grad2", p.norm_grad2},
                     {"norm_l2", p.norm_l2}, {"norm_l4", p.norm_l4}};
    open_out(out_dir, "townes.json") << j.dump(2) << '\n';
    return p;
}

std::vector<MinimizeResult> run_sweep(const RunConfig& config, const TownesProfile& profile,
                                      const std::string& out_dir) {
    const PotentialSpec pot = config.effective_pot();
    GridPtr grid = build_grid(config.domain, config.nx, config.ny);

    std::vector<double> a_list;
    for (double f : config.a_fractions) {
        if (f >= 1.0)
            fail("supercritical-rejected",
                 "sweep fraction >= 1 requests a >= a*, where no minimizer exists");
        a_list.push_back(f * profile.a_star);
    }
    std::vector<MinimizeResult> results =
        continuation_sweep(grid, profile, a_list, pot, config.solver);

    auto csv = open_out(out_dir, "sweep.csv");
    csv << "a,a_frac,total,kinetic,potential,interaction,rotation,magnetic_kinetic,"
           "v_omega_potential,mu,epsilon,x_max_x,x_max_y,n_local_max,iterations,"
           "el_residual,converged\n";
    for (const MinimizeResult& r : results) {
        csv_row(csv, {r.a, r.a / profile.a_star, r.breakdown.total, r.breakdown.kinetic,
                      r.breakdown.potential, r.breakdown.interaction, r.breakdown.rotation,
                      r.breakdown.magnetic_kinetic, r.breakdown.v_omega_potential, r.mu,
                      r.epsilon, r.x_max.x, r.x_max.y, double(r.n_local_max),
                      double(r.iterations), r.el_residual, r.converged ? 1.0 : 0.0});
        if (config.dump_fields) {
            char name[64];
            std::snprintf(name, sizeof(name), "field_a%.6f.gpf1", r.a / profile.a_star);
            fs::create_directories(out_dir);
            write_field((fs::path(out_dir) / name).string(), r.field);
        }
    }
    return results;
}

void run_testfn(const RunConfig& config, const TownesProfile& profile, double a,
                const std::vector<double>& taus, const std::string& out_dir) {
    const PotentialSpec pot = config.effective_pot();
    GridPtr grid = build_grid(config.domain, config.nx, config.ny);

    auto csv = open_out(out_dir, "testfn.csv");
    csv << "a,tau,kinetic,potential,interaction,rotation,total\n";
    for (double tau : taus) {
        TrialParams params;
        params.tau = tau;
        params.profile = &profile;
        params.x_tau = trial_center(config.domain, pot, params.cutoff_radius());
        const EnergyBreakdown b = trial_energy(params, grid, a, pot);
        csv_row(csv, {a, tau, b.kinetic, b.potential, b.interaction, b.rotation, b.total});
    }
}

std::vector<Check> evaluate_checks(const std::vector<MinimizeResult>& results,
                                   const std::vector<BlowupRecord>& records,
                                   const std::vector<std::pair<double, double>>& bounds,
                                   const TownesProfile& profile, const PotentialSpec& pot) {
    std::vector<Check> checks;
    const size_t n = results.size();
    if (n == 0) return checks;

    const double final_frac = results.back().a / profile.a_star;
    const bool asymptotic = pot.theorem_regime() && final_frac >= 0.985;
    const bool trends = asymptotic && n >= 3;
    const double lambda = lambda_param(profile, pot.Lambda);
    const double target = 2.0 * lambda * lambda / profile.a_star;

    auto add = [&](std::string name, bool applicable, bool pass, double measured,
                   std::string detail) {
        checks.push_back({std::move(name), applicable, pass, measured, std::move(detail)});
    };

    {
        bool ok = true;
        for (const auto& r : results) ok = ok && r.converged;
        add("converged", true, ok, ok ? 1.0 : 0.0, "every sweep point converged");
    }
    {
        bool ok = true;
        for (size_t i = 1; i < n; ++i)
            ok = ok && results[i].breakdown.total < results[i - 1].breakdown.total;
        add("energy_monotone_in_a", n >= 2, ok, 0.0, "e(a) strictly decreasing in a");
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double gap = bounds[i].second - results[i].breakdown.total;
            worst = std::min(worst, gap);
            ok = ok && results[i].breakdown.total <= bounds[i].second + 1e-8;
        }
        add("upper_bound_dominance", true, ok, worst,
            "solver energy below the trial-state bound at every a");
        const double agree = bounds.back().second / results.back().breakdown.total - 1.0;
        add("upper_bound_agreement", asymptotic, std::abs(agree) <= 0.20, agree,
            "bound within 20% of the solver energy at the final a");
    }
    if (pot.theorem_regime()) {
        bool ok = true;
        for (const auto& r : results) ok = ok && r.n_local_max == 1;
        add("unique_local_max", true, ok, double(results.back().n_local_max),
            "|u| has a single local maximum above 10% of its peak");
    }
    {
        bool ok = true;
        for (const auto& rec : records) ok = ok && std::abs(rec.mass_window - 1.0) <= 0.02;
        add("mass_window", !records.empty(), ok,
            records.empty() ? 0.0 : records.back().mass_window,
            "rescaled profile mass within 2% of 1");
    }

    if (!records.empty()) {
        const BlowupRecord& last = records.back();

        const double dev = std::abs(last.scaled_energy / target - 1.0);
        add("energy_law", asymptotic, dev <= 0.15, last.scaled_energy,
            "e(a)(a*-a)^{-1/2} within 15% of 2 lambda^2/a*");
        if (trends) {
            bool ok = true;
            for (size_t i = 1; i < records.size(); ++i)
                ok = ok && std::abs(records[i].scaled_energy - target) <
                               std::abs(records[i - 1].scaled_energy - target);
            add("energy_law_trend", true, ok, dev, "deviation from 2 lambda^2/a* shrinks");
        }

        add("multiplier_law", asymptotic, last.mu_eps2 >= -1.15 && last.mu_eps2 <= -0.85,
            last.mu_eps2, "mu_a eps_a^2 in [-1.15, -0.85]");
        if (trends) {
            bool ok = true;
            for (size_t i = 1; i < records.size(); ++i)
                ok = ok && std::abs(records[i].mu_eps2 + 1.0) <
                               std::abs(records[i - 1].mu_eps2 + 1.0);
            add("multiplier_trend", true, ok, last.mu_eps2, "mu_a eps_a^2 approaches -1");
        }

        add("scale_law", asymptotic,
            last.eps / last.eps_predicted >= 0.85 && last.eps / last.eps_predicted <= 1.15,
            last.eps / last.eps_predicted, "eps_a lambda (a*-a)^{-1/4} in [0.85, 1.15]");

        add("concentration", asymptotic, last.x_scaled <= 0.2, last.x_scaled,
            "|x_a| (a*-a)^{-1/4} <= 0.2 at the final a");
        if (trends) {
            // values at rounding noise count as zero for the monotone trend
            bool ok = true;
            for (size_t i = 1; i < records.size(); ++i)
                ok = ok && (records[i].x_scaled <= records[i - 1].x_scaled ||
                            records[i].x_scaled <= 1e-6);
            add("concentration_trend", true, ok, last.x_scaled, "x_scaled shrinks along the sweep");
        }

        add("profile_linf", asymptotic, last.profile_linf <= 0.1 * profile.w0,
            last.profile_linf, "sup |u~_a - w| <= 0.1 ||w||_inf at the final a");
        if (trends) {
            bool ok = true;
            for (size_t i = 1; i < records.size(); ++i)
                ok = ok && (records[i].profile_linf < records[i - 1].profile_linf ||
                            records[i].profile_linf <= 1e-6);
            add("profile_trend", true, ok, last.profile_linf, "profile distance shrinks");
        }

        add("rotation_smallness", asymptotic && pot.Omega > 0.0, last.rotation_scaled <= 0.2,
            last.rotation_scaled, "rotation term o(eps^2): scaled value <= 0.2");
        add("kinetic_window", asymptotic, std::abs(last.kinetic_window - 1.0) <= 0.05,
            last.kinetic_window, "rescaled kinetic within 5% of 1 at the final a");
    }
    return checks;
}

int run_report(const RunConfig& config, const std::string& out_dir) {
    const TownesProfile profile = run_townes(config, out_dir);
    const PotentialSpec pot = config.effective_pot();
    const std::vector<MinimizeResult> results = run_sweep(config, profile, out_dir);
    const std::vector<BlowupRecord> records = blowup_metrics(results, profile, pot);

    GridPtr grid = build_grid(config.domain, config.nx, config.ny);
    std::vector<std::pair<double, double>> bounds;
    for (const MinimizeResult& r : results)
        bounds.push_back(optimal_upper_bound(grid, profile, r.a, pot));

    auto csv = open_out(out_dir, "blowup.csv");
    csv << "a,e_a,scaled_energy,mu_eps2,eps,eps_predicted,x_max_x,x_max_y,x_scaled,theta,"
           "profile_linf,rotation_scaled,imag_l2,mass_window,kinetic_window,window_clipped,"
           "tau_best,upper_bound\n";
    for (size_t i = 0; i < records.size(); ++i) {
        const BlowupRecord& r = records[i];
        csv_row(csv, {r.a, r.e_a, r.scaled_energy, r.mu_eps2, r.eps, r.eps_predicted,
                      r.x_max.x, r.x_max.y, r.x_scaled, r.theta, r.profile_linf,
                      r.rotation_scaled, r.imag_l2, r.mass_window, r.kinetic_window,
                      r.window_clipped ? 1.0 : 0.0, bounds[i].first, bounds[i].second});
    }

    const std::vector<Check> checks = evaluate_checks(results, records, bounds, profile, pot);
    bool all_pass = true;
    nlohmann::json jchecks = nlohmann::json::array();
    for (const Check& c : checks) {
        if (c.applicable && !c.pass) all_pass = false;
        jchecks.push_back({{"name", c.name},
                           {"applicable", c.applicable},
                           {"pass", c.pass},
                           {"measured", c.measured},
                           {"detail", c.detail}});
    }
    nlohmann::json verdict{{"all_pass", all_pass},
                           {"a_star", profile.a_star},
                           {"lambda", lambda_param(profile, pot.Lambda)},
                           {"checks", jchecks}};
    open_out(out_dir, "verdict.json") << verdict.dump(2) << '\n';
    return all_pass ? 0 : 1;
}

int selftest() {
    int failures = 0;
    auto expect = [&](bool ok, const std::string& what) {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
        if (!ok) ++failures;
    };

    GridPtr disk = build_grid(DomainSpec::disk(1.0), 65, 65);
    {
        ComplexField z(disk);
        expect(std::abs(integrate(*disk, std::span<const cplx>(z.values))) == 0.0,
               "integrate of the zero field is exactly zero");
        expect(linf(laplacian_apply(z)) == 0.0, "laplacian of zero field is zero");
    }
    {
        GridPtr rect = build_grid(DomainSpec::rectangle(-1, 1, -1, 1), 33, 33);
        bool ok = true;
        for (int j = 0; j < rect->ny(); ++j)
            for (int i = 0; i < rect->nx(); ++i) {
                const Vec2 p = rect->node(i, j);
                const bool inside =
                    p.x > -1.0 && p.x < 1.0 && p.y > -1.0 && p.y < 1.0;
                ok = ok && (rect->interior(i, j) == inside);
            }
        expect(ok, "rectangle membership matches strict analytic test");
    }
    {
        bool threw = false;
        try {
            build_grid(DomainSpec::disk(1.0), 2, 65);
        } catch (const Error& e) {
            threw = e.kind() == "invalid-resolution";
        }
        expect(threw, "nx=2 raises invalid-resolution");
    }
    {
        ComplexField u(disk);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int k = 0; k < disk->size(); ++k)
            if (disk->interior_flat(k)) u.values[k] = {uni(rng), uni(rng)};
        const EnergyBreakdown b = gp_energy(u, 1.0, PotentialSpec{1.5, 1.5});
        const double lhs = b.total;
        const double rhs = b.magnetic_kinetic + b.v_omega_potential - b.interaction;
        expect(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)),
               "harmonic and magnetic energy forms agree to 1e-10");
        ComplexField re(disk);
        for (int k = 0; k < disk->size(); ++k) re.values[k] = u.values[k].real();
        expect(gp_energy(re, 1.0, PotentialSpec{1.5, 1.5}).rotation == 0.0,
               "rotation term vanishes exactly for real fields");
    }
    {
        const fs::path tmp = fs::temp_directory_path() / "gpbec_selftest.gpf1";
        ComplexField u(disk);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int k = 0; k < disk->size(); ++k)
            if (disk->interior_flat(k)) u.values[k] = {uni(rng), uni(rng)};
        write_field(tmp.string(), u);
        const ComplexField back = read_field(tmp.string(), disk);
        expect(back.values == u.values, "GPF1 round-trip is bitwise identical");
        fs::remove(tmp);
    }
    {
        std::vector<cplx> v = {{1.0, 0.0}, {2.0, 0.0}, {0.5, 0.0}};
        std::vector<double> w = {1.0, 2.0, 0.5};
        auto [theta, aligned] = phase_align(v, w);
        expect(theta == 0.0, "phase_align of a real positive field is zero");
        (void)aligned;
    }
    std::printf("%d failure(s)\n", failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace gpbec
