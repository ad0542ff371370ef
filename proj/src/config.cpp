#include "gpbec/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace gpbec {

namespace {

using nlohmann::json;

Vec2 parse_vec2(const json& j) {
    if (!j.is_array() || j.size() != 2) fail("config-parse", "expected a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

DomainSpec parse_domain(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "disk")
        return DomainSpec::disk(j.at("radius").get<double>(),
                                j.contains("center") ? parse_vec2(j["center"]) : Vec2{});
    if (kind == "rectangle")
        return DomainSpec::rectangle(j.at("x_min").get<double>(), j.at("x_max").get<double>(),
                                     j.at("y_min").get<double>(), j.at("y_max").get<double>());
    if (kind == "ellipse")
        return DomainSpec::ellipse(parse_vec2(j.at("semi_axes")),
                                   j.contains("center") ? parse_vec2(j["center"]) : Vec2{});
    fail("config-parse", "unknown domain kind '" + kind + "'");
}

std::vector<double> parse_a_values(const json& j) {
    std::vector<double> fr;
    if (j.contains("fractions")) {
        for (const auto& v : j["fractions"]) fr.push_back(v.get<double>());
    } else if (j.contains("schedule")) {
        const auto& s = j["schedule"];
        const double start = s.at("start").get<double>();
        const double target = s.at("target").get<double>();
        const int count = s.at("count").get<int>();
        if (count < 1 || !(start < target) || !(start > 0.0))
            fail("config-parse", "schedule needs 0 < start < target and count >= 1");
        // geometric approach of the gap 1 - f toward the target fraction
        const double rho =
            count > 1 ? std::pow((1.0 - target) / (1.0 - start), 1.0 / (count - 1)) : 1.0;
        double gap = 1.0 - start;
        for (int k = 0; k < count; ++k) {
            fr.push_back(1.0 - gap);
            gap *= rho;
        }
        fr.back() = target;
    } else {
        fail("config-parse", "a_values needs either 'fractions' or 'schedule'");
    }
    if (fr.empty()) fail("config-parse", "a_values resolved to an empty list");
    return fr;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail("config-parse", std::string("config is not valid JSON: ") + e.what());
    }
    try {
        RunConfig c;
        c.domain = parse_domain(j.at("domain"));
        c.nx = j.at("resolution").at("nx").get<int>();
        c.ny = j.at("resolution").at("ny").get<int>();
        const auto& p = j.at("potential");
        c.pot = PotentialSpec(p.at("lambda").get<double>(), p.at("omega").get<double>());
        c.validation_mode = j.value("validation_mode", false);
        c.a_fractions = parse_a_values(j.at("a_values"));
        if (j.contains("solver")) {
            const auto& s = j["solver"];
            c.solver.dt = s.value("dt", c.solver.dt);
            c.solver.tol_energy = s.value("tol_energy", c.solver.tol_energy);
            c.solver.tol_residual = s.value("tol_residual", c.solver.tol_residual);
            c.solver.max_iter = s.value("max_iter", c.solver.max_iter);
            c.solver.seed = s.value("seed", c.solver.seed);
            c.solver.linear_solver_tol =
                s.value("linear_solver_tol", c.solver.linear_solver_tol);
            c.solver.validate();
        }
        if (j.contains("townes")) {
            c.townes_tol = j["townes"].value("tol", c.townes_tol);
            c.townes_rmax = j["townes"].value("r_max", c.townes_rmax);
        }
        if (j.contains("outputs")) {
            c.out_dir = j["outputs"].value("directory", c.out_dir);
            c.dump_fields = j["outputs"].value("dump_fields", false);
        }
        return c;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail("config-parse", std::string("config field error: ") + e.what());
    }
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail("config-not-found", "config file '" + path + "' does not exist");
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

}  // namespace gpbec
