#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpbec/io.hpp"
#include "gpbec/run.hpp"

namespace {

void print_error(const std::string& kind, const std::string& message) {
    const nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool dump_fields = false;
    int threads = 0;
};

gpbec::RunConfig load_config(const CommonOpts& opts) {
    gpbec::RunConfig c = gpbec::RunConfig::load(opts.config_path);
    if (!opts.out_dir.empty()) c.out_dir = opts.out_dir;
    if (opts.seed_set) c.solver.seed = opts.seed;
    if (opts.dump_fields) c.dump_fields = true;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground states of the rotating Gross-Pitaevskii energy on bounded domains"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--config", opts.config_path, "run configuration (JSON)");
    app.add_option("--out", opts.out_dir, "output directory (overrides config)");
    auto* seed_opt = app.add_option("--seed", opts.seed, "RNG seed override");
    app.add_flag("--dump-fields", opts.dump_fields, "write GPF1 field dumps");
    app.add_option("--threads", opts.threads,
                   "reserved; all reductions are fixed-order serial");

    auto* cmd_townes = app.add_subcommand("townes", "solve the Townes profile, write CSV");
    auto* cmd_solve = app.add_subcommand("solve", "minimize at a single a");
    double solve_frac = -1.0;
    cmd_solve->add_option("--a-frac", solve_frac, "a/a* for the solve (overrides config)");
    auto* cmd_sweep = app.add_subcommand("sweep", "continuation sweep over the config a list");
    auto* cmd_testfn = app.add_subcommand("testfn", "trial-state energy scan");
    double testfn_frac = 1.1;
    std::vector<double> taus{5.0, 10.0, 20.0, 40.0};
    cmd_testfn->add_option("--a-frac", testfn_frac, "a/a* for the scan (may exceed 1)");
    cmd_testfn->add_option("--taus", taus, "concentration scales to evaluate");
    auto* cmd_report = app.add_subcommand(
        "report", "full pipeline: townes -> sweep -> blow-up metrics -> verdict");
    auto* cmd_selftest = app.add_subcommand("selftest", "config-free sanity checks");

    CLI11_PARSE(app, argc, argv);
    opts.seed_set = seed_opt->count() > 0;

    try {
        if (cmd_selftest->parsed()) return gpbec::selftest();

        if (opts.config_path.empty())
            gpbec::fail("config-not-found", "this subcommand needs --config <path>");
        const gpbec::RunConfig config = load_config(opts);

        if (cmd_townes->parsed()) {
            const gpbec::TownesProfile p = gpbec::run_townes(config, config.out_dir);
            std::printf("w0 = %s\na_star = %s\n", gpbec::format_double(p.w0).c_str(),
                        gpbec::format_double(p.a_star).c_str());
            return 0;
        }
        if (cmd_solve->parsed()) {
            gpbec::RunConfig c = config;
            if (solve_frac >= 0.0) c.a_fractions = {solve_frac};
            c.a_fractions.resize(1);
            const gpbec::TownesProfile p = gpbec::run_townes(c, c.out_dir);
            const auto results = gpbec::run_sweep(c, p, c.out_dir);
            std::printf("e(a) = %s (converged = %d)\n",
                        gpbec::format_double(results[0].breakdown.total).c_str(),
                        int(results[0].converged));
            return results[0].converged ? 0 : 1;
        }
        if (cmd_sweep->parsed()) {
            const gpbec::TownesProfile p = gpbec::run_townes(config, config.out_dir);
            const auto results = gpbec::run_sweep(config, p, config.out_dir);
            bool ok = true;
            for (const auto& r : results) ok = ok && r.converged;
            return ok ? 0 : 1;
        }
        if (cmd_testfn->parsed()) {
            const gpbec::TownesProfile p = gpbec::run_townes(config, config.out_dir);
            gpbec::run_testfn(config, p, testfn_frac * p.a_star, taus, config.out_dir);
            return 0;
        }
        if (cmd_report->parsed()) return gpbec::run_report(config, config.out_dir);
    } catch (const gpbec::Error& e) {
        print_error(e.kind(), e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 2;
    }
    return 0;
}
