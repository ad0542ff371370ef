#pragma once

#include <optional>

#include "gpbec/asymptotics.hpp"
#include "gpbec/config.hpp"
#include "gpbec/testfn.hpp"

namespace gpbec {

/// Solves the Townes profile per config and writes townes.csv plus the
/// townes.json sidecar into out_dir.
TownesProfile run_townes(const RunConfig& config, const std::string& out_dir);

/// Continuation sweep over the config's a values; writes sweep.csv and the
/// optional GPF1 dumps. Returns one result per a.
std::vector<MinimizeResult> run_sweep(const RunConfig& config, const TownesProfile& profile,
                                      const std::string& out_dir);

/// Trial-state tau scan at one interaction strength (possibly supercritical);
/// writes testfn.csv.
void run_testfn(const RunConfig& config, const TownesProfile& profile, double a,
                const std::vector<double>& taus, const std::string& out_dir);

/// One verdict row of the report.
struct Check {
    std::string name;
    bool applicable = false;
    bool pass = true;
    double measured = 0.0;
    std::string detail;
};

/// Evaluates the blow-up checks on a finished sweep. Threshold checks for the
/// asymptotic limits apply only when the sweep actually approaches a*
/// (final fraction >= 0.985); structural checks always apply.
std::vector<Check> evaluate_checks(const std::vector<MinimizeResult>& results,
                                   const std::vector<BlowupRecord>& records,
                                   const std::vector<std::pair<double, double>>& bounds,
                                   const TownesProfile& profile, const PotentialSpec& pot);

/// Full pipeline: townes -> sweep -> blow-up metrics -> blowup.csv and
/// verdict.json. Returns 0 iff every applicable check passes.
int run_report(const RunConfig& config, const std::string& out_dir);

/// Fast self-contained sanity checks (no config); returns 0 on success.
int selftest();

}  // namespace gpbec
