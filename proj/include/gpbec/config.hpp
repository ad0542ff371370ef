#pragma once

#include <string>
#include <vector>

#include "gpbec/energy.hpp"
#include "gpbec/minimize.hpp"

namespace gpbec {

/// One JSON file per run; nested objects mirror the type structure.
struct RunConfig {
    DomainSpec domain = DomainSpec::disk(4.0);
    int nx = 257, ny = 257;
    PotentialSpec pot{2.0, 1.0};
    bool validation_mode = false;  // forces V == 0 for the eigenvalue oracles

    std::vector<double> a_fractions;  // of a*, resolved from list or schedule

    SolverConfig solver;
    double townes_tol = 1e-12;
    double townes_rmax = 20.0;

    std::string out_dir = "out";
    bool dump_fields = false;

    static RunConfig load(const std::string& path);
    static RunConfig from_json_text(const std::string& text);

    /// Potential actually used by the run (validation_mode zeroes V).
    PotentialSpec effective_pot() const {
        PotentialSpec p = pot;
        p.zero_potential = validation_mode;
        return p;
    }
};

}  // namespace gpbec
