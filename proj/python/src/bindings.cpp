#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpbec/asymptotics.hpp"
#include "gpbec/io.hpp"
#include "gpbec/run.hpp"
#include "gpbec/testfn.hpp"

namespace py = pybind11;
using namespace gpbec;

namespace {

py::array_t<std::complex<double>> field_values(const ComplexField& f) {
    const Grid& g = *f.grid;
    py::array_t<std::complex<double>> out({g.ny(), g.nx()});
    auto r = out.mutable_unchecked<2>();
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) r(j, i) = f.values[g.idx(i, j)];
    return out;
}

ComplexField field_from_values(GridPtr grid, py::array_t<std::complex<double>> values) {
    const Grid& g = *grid;
    if (values.ndim() != 2 || values.shape(0) != g.ny() || values.shape(1) != g.nx())
        fail("invalid-field", "array shape must be (ny, nx)");
    ComplexField f(std::move(grid));
    auto r = values.unchecked<2>();
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) f.values[g.idx(i, j)] = r(j, i);
    f.validate();
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rotating Gross-Pitaevskii ground states on bounded 2D domains";

    py::register_exception<Error>(m, "GpbecError");

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    py::class_<DomainSpec>(m, "DomainSpec")
        .def_static("disk", &DomainSpec::disk, py::arg("radius"),
                    py::arg("center") = Vec2{})
        .def_static("rectangle", &DomainSpec::rectangle, py::arg("x_min"), py::arg("x_max"),
                    py::arg("y_min"), py::arg("y_max"))
        .def_static("ellipse", &DomainSpec::ellipse, py::arg("semi_axes"),
                    py::arg("center") = Vec2{})
        .def("contains", [](const DomainSpec& d, double x, double y) {
            return d.contains({x, y});
        });

    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def_property_readonly("nx", &Grid::nx)
        .def_property_readonly("ny", &Grid::ny)
        .def_property_readonly("hx", &Grid::hx)
        .def_property_readonly("hy", &Grid::hy)
        .def_property_readonly("x0", &Grid::x0)
        .def_property_readonly("y0", &Grid::y0)
        .def_property_readonly("n_interior", &Grid::n_interior)
        .def_property_readonly("interior_mask", [](const Grid& g) {
            py::array_t<bool> out({g.ny(), g.nx()});
            auto r = out.mutable_unchecked<2>();
            for (int j = 0; j < g.ny(); ++j)
                for (int i = 0; i < g.nx(); ++i) r(j, i) = g.interior(i, j);
            return out;
        });

    m.def("build_grid", &build_grid, py::arg("spec"), py::arg("nx"), py::arg("ny"));

    py::class_<ComplexField>(m, "ComplexField")
        .def_property_readonly("grid", [](const ComplexField& f) { return f.grid; })
        .def_property_readonly("values", &field_values);
    m.def("field_from_values", &field_from_values, py::arg("grid"), py::arg("values"));

    m.def("laplacian_apply", &laplacian_apply);
    m.def("gradient_apply", &gradient_apply);
    m.def("integrate_field", [](const ComplexField& f) {
        return integrate(*f.grid, std::span<const cplx>(f.values));
    });
    m.def("mass", &mass);

    py::enum_<ShootOutcome>(m, "ShootOutcome")
        .value("CrossesZero", ShootOutcome::CrossesZero)
        .value("StaysPositiveAndGrows", ShootOutcome::StaysPositiveAndGrows)
        .value("Decays", ShootOutcome::Decays);

    py::class_<ShootResult>(m, "ShootResult")
        .def_readonly("outcome", &ShootResult::outcome)
        .def_readonly("r_event", &ShootResult::r_event);
    m.def("shoot", &shoot, py::arg("w0_trial"), py::arg("r_max") = 20.0);

    py::class_<TownesProfile>(m, "TownesProfile")
        .def_readonly("w0", &TownesProfile::w0)
        .def_readonly("a_star", &TownesProfile::a_star)
        .def_readonly("i2", &TownesProfile::i2)
        .def_readonly("norm_grad2", &TownesProfile::norm_grad2)
        .def_readonly("norm_l2", &TownesProfile::norm_l2)
        .def_readonly("norm_l4", &TownesProfile::norm_l4)
        .def_readonly("r_samples", &TownesProfile::r_samples)
        .def_readonly("w_samples", &TownesProfile::w_samples)
        .def("eval", &TownesProfile::eval, py::arg("r"));
    m.def("solve_townes", &solve_townes, py::arg("tol") = 1e-12, py::arg("r_max") = 20.0);
    m.def("lambda_param", &lambda_param, py::arg("profile"), py::arg("Lambda"));
    m.def("interp_to_grid", &interp_to_grid, py::arg("profile"), py::arg("grid"),
          py::arg("scale") = 1.0, py::arg("center") = Vec2{});

    py::class_<PotentialSpec>(m, "PotentialSpec")
        .def(py::init<double, double, bool>(), py::arg("Lambda"), py::arg("Omega"),
             py::arg("zero_potential") = false)
        .def_readonly("Lambda", &PotentialSpec::Lambda)
        .def_readonly("Omega", &PotentialSpec::Omega)
        .def_readonly("zero_potential", &PotentialSpec::zero_potential)
        .def("theorem_regime", &PotentialSpec::theorem_regime);

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("kinetic", &EnergyBreakdown::kinetic)
        .def_readonly("potential", &EnergyBreakdown::potential)
        .def_readonly("interaction", &EnergyBreakdown::interaction)
        .def_readonly("rotation", &EnergyBreakdown::rotation)
        .def_readonly("total", &EnergyBreakdown::total)
        .def_readonly("magnetic_kinetic", &EnergyBreakdown::magnetic_kinetic)
        .def_readonly("v_omega_potential", &EnergyBreakdown::v_omega_potential);

    m.def("gp_energy", &gp_energy, py::arg("u"), py::arg("a"), py::arg("pot"));
    m.def("lagrange_multiplier", &lagrange_multiplier);
    m.def("el_residual", &el_residual);
    m.def("diamagnetic_check", &diamagnetic_check);
    m.def("gn_check", &gn_check);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("dt", &SolverConfig::dt)
        .def_readwrite("tol_energy", &SolverConfig::tol_energy)
        .def_readwrite("tol_residual", &SolverConfig::tol_residual)
        .def_readwrite("max_iter", &SolverConfig::max_iter)
        .def_readwrite("seed", &SolverConfig::seed)
        .def_readwrite("linear_solver_tol", &SolverConfig::linear_solver_tol);

    py::class_<MinimizeResult>(m, "MinimizeResult")
        .def_readonly("field", &MinimizeResult::field)
        .def_readonly("breakdown", &MinimizeResult::breakdown)
        .def_readonly("mu", &MinimizeResult::mu)
        .def_readonly("epsilon", &MinimizeResult::epsilon)
        .def_readonly("x_max", &MinimizeResult::x_max)
        .def_readonly("n_local_max", &MinimizeResult::n_local_max)
        .def_readonly("iterations", &MinimizeResult::iterations)
        .def_readonly("el_residual", &MinimizeResult::el_residual)
        .def_readonly("converged", &MinimizeResult::converged)
        .def_readonly("a", &MinimizeResult::a);

    m.def("initial_field", &initial_field, py::arg("grid"), py::arg("profile"), py::arg("a"),
          py::arg("pot"), py::arg("seed") = 0);
    m.def("flow_step", &flow_step, py::arg("u"), py::arg("a"), py::arg("pot"), py::arg("dt"),
          py::arg("linear_solver_tol") = 1e-8);
    m.def("solve", &solve, py::arg("grid"), py::arg("profile"), py::arg("a"), py::arg("pot"),
          py::arg("config") = SolverConfig{});
    m.def("continuation_sweep", &continuation_sweep, py::arg("grid"), py::arg("profile"),
          py::arg("a_list"), py::arg("pot"), py::arg("config") = SolverConfig{});

    py::class_<TrialParams>(m, "TrialParams")
        .def(py::init([](double tau, Vec2 x_tau, double M, const TownesProfile& p) {
                 TrialParams t;
                 t.tau = tau;
                 t.x_tau = x_tau;
                 t.M = M;
                 t.profile = &p;
                 return t;
             }),
             py::arg("tau"), py::arg("x_tau"), py::arg("M"), py::arg("profile"),
             py::keep_alive<1, 5>())
        .def_readonly("tau", &TrialParams::tau)
        .def("cutoff_radius", &TrialParams::cutoff_radius);

    m.def("build_trial", &build_trial, py::arg("params"), py::arg("grid"), py::arg("Omega"));
    m.def("trial_energy", &trial_energy, py::arg("params"), py::arg("grid"), py::arg("a"),
          py::arg("pot"));
    m.def("optimal_upper_bound", &optimal_upper_bound, py::arg("grid"), py::arg("profile"),
          py::arg("a"), py::arg("pot"));

    py::class_<BlowupRecord>(m, "BlowupRecord")
        .def_readonly("a", &BlowupRecord::a)
        .def_readonly("e_a", &BlowupRecord::e_a)
        .def_readonly("scaled_energy", &BlowupRecord::scaled_energy)
        .def_readonly("mu_eps2", &BlowupRecord::mu_eps2)
        .def_readonly("eps", &BlowupRecord::eps)
        .def_readonly("eps_predicted", &BlowupRecord::eps_predicted)
        .def_readonly("x_scaled", &BlowupRecord::x_scaled)
        .def_readonly("theta", &BlowupRecord::theta)
        .def_readonly("profile_linf", &BlowupRecord::profile_linf)
        .def_readonly("rotation_scaled", &BlowupRecord::rotation_scaled)
        .def_readonly("imag_l2", &BlowupRecord::imag_l2)
        .def_readonly("mass_window", &BlowupRecord::mass_window)
        .def_readonly("kinetic_window", &BlowupRecord::kinetic_window)
        .def_readonly("window_clipped", &BlowupRecord::window_clipped);

    m.def("blowup_metrics", &blowup_metrics, py::arg("results"), py::arg("profile"),
          py::arg("pot"));

    m.def("write_field", &write_field, py::arg("path"), py::arg("field"));
    m.def("read_field", &read_field, py::arg("path"), py::arg("grid"));

    m.attr("__version__") = "0.1.0";
}
