#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deltaspec/models.hpp"
#include "deltaspec/oracle.hpp"
#include "deltaspec/perturb.hpp"
#include "deltaspec/series.hpp"
#include "deltaspec/specfun.hpp"
#include "deltaspec/validate.hpp"

namespace py = pybind11;
using namespace deltaspec;

namespace {

py::dict series_run_dict(const series::SeriesRun& r) {
    py::dict d;
    d["id"] = r.id;
    d["term_convention"] = r.term_convention;
    d["params"] = r.params;
    d["partial_sums"] = r.partial_sums;
    d["averaged"] = r.averaged;
    d["target"] = r.target ? py::object(py::float_(*r.target)) : py::none();
    d["target_alt"] = r.target_alt ? py::object(py::float_(*r.target_alt)) : py::none();
    d["tail_correction"] = r.tail_correction;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "delta-perturbed solvable models: exact spectra, perturbation "
              "coefficients and series identities";

    py::class_<Units>(m, "Units")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("hbar"), py::arg("mass"))
        .def_readwrite("hbar", &Units::hbar)
        .def_readwrite("mass", &Units::mass)
        .def("h2m", &Units::h2m);

    // special functions
    auto sf = m.def_submodule("specfun");
    sf.def("gamma", &specfun::gamma, py::arg("x"));
    sf.def("digamma", &specfun::digamma, py::arg("x"));
    sf.def("kummer_m", &specfun::kummer_m, py::arg("a"), py::arg("b"), py::arg("z"));
    sf.def("tricomi_u_b2", &specfun::tricomi_u_b2, py::arg("a"), py::arg("z"));
    sf.def("pcf_u", &specfun::pcf_u, py::arg("a"), py::arg("z"));

    // models
    py::enum_<models::Parity>(m, "Parity")
        .value("even", models::Parity::even)
        .value("odd", models::Parity::odd)
        .value("none", models::Parity::none);

    py::class_<models::EigenRoot>(m, "EigenRoot")
        .def_readonly("energy", &models::EigenRoot::energy)
        .def_readonly("scan_value", &models::EigenRoot::scan_value)
        .def_readonly("residual", &models::EigenRoot::residual)
        .def_readonly("ordinal", &models::EigenRoot::ordinal)
        .def_readonly("parity", &models::EigenRoot::parity)
        .def("__repr__", [](const models::EigenRoot& e) {
            return "<EigenRoot ordinal=" + std::to_string(e.ordinal) +
                   " energy=" + std::to_string(e.energy) + ">";
        });

    py::class_<models::DeltaSpike>(m, "DeltaSpike")
        .def(py::init<double, double>(), py::arg("p"), py::arg("lam"))
        .def_readwrite("p", &models::DeltaSpike::p)
        .def_readwrite("lam", &models::DeltaSpike::lambda);

    py::class_<models::BoxDeltaSpec>(m, "BoxDeltaSpec")
        .def(py::init([](double L, std::vector<std::pair<double, double>> deltas, Units u) {
                 models::BoxDeltaSpec s;
                 s.L = L;
                 for (auto& [p, lam] : deltas) s.deltas.push_back({p, lam});
                 s.units = u;
                 models::validate(s);
                 return s;
             }),
             py::arg("L"), py::arg("deltas"), py::arg("units") = Units{})
        .def_readwrite("L", &models::BoxDeltaSpec::L)
        .def_readwrite("units", &models::BoxDeltaSpec::units)
        .def_property_readonly("deltas", [](const models::BoxDeltaSpec& s) {
            std::vector<std::pair<double, double>> out;
            for (const auto& d : s.deltas) out.emplace_back(d.p, d.lambda);
            return out;
        });

    py::class_<models::FiniteWellDeltaSpec>(m, "FiniteWellDeltaSpec")
        .def(py::init<double, double, double, Units>(), py::arg("L"), py::arg("V0"),
             py::arg("lam"), py::arg("units") = Units{})
        .def_readwrite("L", &models::FiniteWellDeltaSpec::L)
        .def_readwrite("V0", &models::FiniteWellDeltaSpec::V0)
        .def_readwrite("lam", &models::FiniteWellDeltaSpec::lambda)
        .def_readwrite("units", &models::FiniteWellDeltaSpec::units);

    py::class_<models::OscillatorDeltaSpec>(m, "OscillatorDeltaSpec")
        .def(py::init<double, double, Units>(), py::arg("omega"), py::arg("lam"),
             py::arg("units") = Units{1.0, 1.0})
        .def_readwrite("omega", &models::OscillatorDeltaSpec::omega)
        .def_readwrite("lam", &models::OscillatorDeltaSpec::lambda)
        .def_readwrite("units", &models::OscillatorDeltaSpec::units);

    py::class_<models::HydrogenDeltaSpec>(m, "HydrogenDeltaSpec")
        .def(py::init<double, double, double, Units>(), py::arg("a"), py::arg("lam"),
             py::arg("e2") = 1.0, py::arg("units") = Units{})
        .def_readwrite("a", &models::HydrogenDeltaSpec::a)
        .def_readwrite("lam", &models::HydrogenDeltaSpec::lambda)
        .def_readwrite("e2", &models::HydrogenDeltaSpec::e2)
        .def_readwrite("units", &models::HydrogenDeltaSpec::units);

    m.def("box_delta_condition", &models::box_delta_condition, py::arg("k"), py::arg("spec"));
    m.def("box_delta_spectrum", &models::box_delta_spectrum, py::arg("spec"), py::arg("count"));
    m.def("box_delta_bound_state", [](const models::BoxDeltaSpec& s) {
        auto r = models::box_delta_bound_state(s);
        py::dict d;
        d["critical_length"] = r.critical_length;
        d["state"] = r.state ? py::cast(*r.state) : py::object(py::none());
        return d;
    });
    m.def("finite_well_spectrum", &models::finite_well_spectrum, py::arg("spec"));
    m.def("finite_well_delta_condition", &models::finite_well_delta_condition, py::arg("E"),
          py::arg("spec"));
    m.def("finite_well_delta_spectrum", &models::finite_well_delta_spectrum, py::arg("spec"));
    m.def("sho_delta_condition", &models::sho_delta_condition, py::arg("E"), py::arg("spec"));
    m.def("sho_delta_spectrum", &models::sho_delta_spectrum, py::arg("spec"), py::arg("count"));
    m.def("hydrogen_delta_condition", &models::hydrogen_delta_condition, py::arg("E"),
          py::arg("spec"));
    m.def("hydrogen_delta_spectrum", &models::hydrogen_delta_spectrum, py::arg("spec"),
          py::arg("count"));

    // perturbation theory
    py::class_<perturb::PTCoefficients>(m, "PTCoefficients")
        .def_readonly("E0", &perturb::PTCoefficients::E0)
        .def_readonly("E1", &perturb::PTCoefficients::E1)
        .def_readonly("E2", &perturb::PTCoefficients::E2)
        .def_readonly("l_max", &perturb::PTCoefficients::l_max)
        .def_readonly("step", &perturb::PTCoefficients::step)
        .def_readonly("tail_estimate", &perturb::PTCoefficients::tail_estimate)
        .def("__repr__", [](const perturb::PTCoefficients& c) {
            return "<PTCoefficients E0=" + std::to_string(c.E0) +
                   " E1=" + std::to_string(c.E1) + " E2=" + std::to_string(c.E2) + ">";
        });

    m.def("box_pt_closed", &perturb::box_pt_closed, py::arg("n"), py::arg("p"), py::arg("L"),
          py::arg("units") = Units{});
    m.def("box_e2_sum", &perturb::box_e2_sum, py::arg("n"), py::arg("p"), py::arg("L"),
          py::arg("units"), py::arg("l_max"));
    m.def("box_psi1_closed", &perturb::box_psi1_closed, py::arg("n"), py::arg("p"), py::arg("x"),
          py::arg("L"), py::arg("units") = Units{});
    m.def("box_psi1_sum", &perturb::box_psi1_sum, py::arg("n"), py::arg("p"), py::arg("x"),
          py::arg("L"), py::arg("units"), py::arg("l_max"));
    m.def("sho_pt_closed", &perturb::sho_pt_closed, py::arg("n"), py::arg("spec"),
          py::arg("parity") = models::Parity::even);
    m.def("sho_e2_sum", &perturb::sho_e2_sum, py::arg("n"), py::arg("spec"), py::arg("l_max"));
    m.def(
        "extract_box",
        [](const models::BoxDeltaSpec& s, int ordinal, double step) {
            return perturb::numeric_pt_extract(s, ordinal, {step, true});
        },
        py::arg("spec"), py::arg("ordinal"), py::arg("step") = 5e-3);
    m.def(
        "extract_sho",
        [](const models::OscillatorDeltaSpec& s, int n, double step) {
            return perturb::numeric_pt_extract(s, n, {step, true});
        },
        py::arg("spec"), py::arg("even_ordinal"), py::arg("step") = 5e-3);
    m.def(
        "extract_well",
        [](const models::FiniteWellDeltaSpec& s, int n, double step) {
            return perturb::numeric_pt_extract(s, n, {step, false});
        },
        py::arg("spec"), py::arg("even_ordinal"), py::arg("step") = 2e-3);
    m.def(
        "extract_hydrogen",
        [](const models::HydrogenDeltaSpec& s, int n, double step) {
            return perturb::numeric_pt_extract(s, n, {step, true});
        },
        py::arg("spec"), py::arg("ordinal"), py::arg("step") = 5e-3);
    m.def("well_bound_part_e2", &perturb::well_bound_part_e2, py::arg("spec"),
          py::arg("target_ordinal"));
    m.def("well_box_regularized_continuum_e2", &perturb::well_box_regularized_continuum_e2,
          py::arg("spec"), py::arg("target_ordinal"), py::arg("R_over_L"));

    // series
    m.def("odd_reciprocal_sum",
          [](int n, long terms) { return series_run_dict(series::odd_reciprocal_sum(n, terms)); },
          py::arg("n"), py::arg("terms"));
    m.def("unrestricted_sum",
          [](int n, long terms) { return series_run_dict(series::unrestricted_sum(n, terms)); },
          py::arg("n"), py::arg("terms"));
    m.def("sum_rule_series",
          [](int n, double p, double x, double L, long terms) {
              return series_run_dict(series::sum_rule_series(n, p, x, L, terms));
          },
          py::arg("n"), py::arg("p"), py::arg("x"), py::arg("L"), py::arg("terms"));
    m.def("pi_series",
          [](long j, bool accelerate) {
              auto r = series::pi_series(j, accelerate);
              py::dict d = series_run_dict(r.run);
              d["pi_raw"] = r.pi_raw;
              d["pi_avg"] = r.pi_avg;
              return d;
          },
          py::arg("j"), py::arg("accelerate") = true);
    m.def("sho_series",
          [](int n, long l_max) { return series_run_dict(series::sho_series(n, l_max)); },
          py::arg("n"), py::arg("l_max"));
    m.def("accelerate_avg", [](std::vector<double> sums) {
        return series::accelerate_avg(sums);
    });

    // oracle
    py::enum_<oracle::DeltaMode>(m, "DeltaMode")
        .value("jump_condition", oracle::DeltaMode::jump_condition)
        .value("narrow_gaussian", oracle::DeltaMode::narrow_gaussian);

    py::class_<oracle::GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("lo", &oracle::GridSpec::lo)
        .def_readwrite("hi", &oracle::GridSpec::hi)
        .def_readwrite("points", &oracle::GridSpec::points)
        .def_readwrite("mode", &oracle::GridSpec::mode)
        .def_readwrite("width", &oracle::GridSpec::width);

    m.def("default_grid", &oracle::default_grid, py::arg("model"), py::arg("points") = 2001,
          py::arg("mode") = oracle::DeltaMode::jump_condition, py::arg("width") = 0.0);
    m.def("oracle_spectrum", &oracle::oracle_spectrum, py::arg("model"), py::arg("grid"),
          py::arg("k_states"));
    m.def("oracle_spectrum_extrapolated", &oracle::oracle_spectrum_extrapolated,
          py::arg("model"), py::arg("grid"), py::arg("k_states"));
    m.def("matrix_element_delta", &oracle::matrix_element_delta, py::arg("model"), py::arg("i"),
          py::arg("j"), py::arg("x0"), py::arg("grid"));

    // validation
    m.def("run_validation", [](const std::string& only) {
        py::list out;
        for (const auto& r : validate::run_validation({only, false})) {
            py::dict d;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    }, py::arg("only") = "");

    m.attr("__version__") = "1.0.0";
}
