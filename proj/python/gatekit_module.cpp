#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gatekit/analytic_engine.hpp"
#include "gatekit/gate_design.hpp"
#include "gatekit/hamiltonian_oracle.hpp"
#include "gatekit/scan_harness.hpp"
#include "gatekit/serialization.hpp"
#include "gatekit/version.hpp"

#include <nlohmann/json.hpp>

namespace py = pybind11;
using namespace gatekit;

namespace {

py::dict quad_to_dict(const PopulationQuad& q) {
    py::dict d;
    d["pSS"] = q.p_ss;
    d["pSD"] = q.p_sd;
    d["pDS"] = q.p_ds;
    d["pDD"] = q.p_dd;
    d["fidelity"] = q.fidelity;
    d["purity"] = q.purity;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-tone entangling gate design and verification";
    m.attr("__version__") = kVersion;
    m.attr("XI0") = kXi0;
    m.attr("ETA_OMEGA") = kEtaOmega;

    py::register_exception<DesignError>(m, "DesignError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<GateDesign>(m, "GateDesign")
        .def_property_readonly("family",
                               [](const GateDesign& d) { return family_name(d.family); })
        .def_property_readonly("n", [](const GateDesign& d) { return d.tones.indices(); })
        .def_property_readonly("r", [](const GateDesign& d) { return d.amplitudes; })
        .def("label", &GateDesign::label)
        .def("normalization_residual", &GateDesign::normalization_residual)
        .def("to_json", [](const GateDesign& d) { return design_to_json(d).dump(2); })
        .def("__repr__", [](const GateDesign& d) { return "<GateDesign " + d.label() + ">"; });

    m.def("design_ms", &design_ms);
    m.def("design_cardioid",
          [](const std::vector<int>& tones) { return design_cardioid(ToneIndexSet(tones)); },
          py::arg("tones"));
    m.def("design_antioid",
          [](const std::vector<int>& tones) { return design_antioid(ToneIndexSet(tones)); },
          py::arg("tones"));
    m.def("design_carnu",
          [](const std::vector<int>& tones) { return design_carnu(ToneIndexSet(tones)); },
          py::arg("tones"));
    m.def("design_carnu_minimized",
          [](const std::vector<int>& tones) { return design_carnu_minimized(ToneIndexSet(tones)); },
          py::arg("tones"));
    m.def("make_custom", &make_custom, py::arg("tones"), py::arg("amplitudes"),
          py::arg("renormalize") = false);
    m.def("design_from_json", [](const std::string& text) {
        return design_from_json(nlohmann::json::parse(text));
    });
    m.def("cardioid_closed_form_amplitudes", &cardioid_closed_form_amplitudes, py::arg("N"));
    m.def("gate_time_ratio", &gate_time_ratio, py::arg("N"));

    m.def("validate_tone_set", [](const std::vector<int>& tones) {
        const ValidationReport report = validate_tone_set(ToneIndexSet(tones));
        py::dict d;
        d["admissible"] = report.admissible;
        py::list violations;
        for (const auto& v : report.violations) violations.append(py::make_tuple(
            v.signed_tones[0], v.signed_tones[1], v.signed_tones[2]));
        d["violations"] = violations;
        return d;
    }, py::arg("tones"));

    m.def("trajectory",
          [](const GateDesign& d, double t, double dnu_rel) { return trajectory(d, t, dnu_rel); },
          py::arg("design"), py::arg("t"), py::arg("dnu_rel") = 0.0);
    m.def("accumulated_phase",
          [](const GateDesign& d, double t, double dnu_rel) {
              return accumulated_phase(d, t, dnu_rel);
          },
          py::arg("design"), py::arg("t"), py::arg("dnu_rel") = 0.0);
    m.def("gate_fidelity", &gate_fidelity, py::arg("F"), py::arg("G"), py::arg("A"),
          py::arg("nbar"));
    m.def("gate_infidelity", &gate_infidelity, py::arg("F"), py::arg("G"), py::arg("A"),
          py::arg("nbar"));
    m.def("populations",
          [](const GateDesign& d, double t, double dT_rel, double dnu_rel, double nbar) {
              return quad_to_dict(populations(d, t, {dT_rel, dnu_rel, nbar}));
          },
          py::arg("design"), py::arg("t"), py::arg("dT_rel") = 0.0, py::arg("dnu_rel") = 0.0,
          py::arg("nbar") = 0.0);
    m.def("gate_purity",
          [](const GateDesign& d, double t, double dT_rel, double dnu_rel, double nbar) {
              return gate_purity(d, t, {dT_rel, dnu_rel, nbar});
          },
          py::arg("design"), py::arg("t"), py::arg("dT_rel") = 0.0, py::arg("dnu_rel") = 0.0,
          py::arg("nbar") = 0.0);
    m.def("radial_form", [](int N, double t) {
        const RadialForm rf = radial_form(N, t);
        return py::make_tuple(rf.R, rf.phi, rf.a);
    }, py::arg("N"), py::arg("t"));
    m.def("hyp2f1_series", &hyp2f1_series, py::arg("b"), py::arg("z"));
    m.def("carrier_series", &carrier_series, py::arg("design"), py::arg("omega_over_nu"),
          py::arg("eta"), py::arg("t"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("n_max", &SimConfig::n_max)
        .def_readwrite("nu", &SimConfig::nu)
        .def_readwrite("eta", &SimConfig::eta)
        .def_readwrite("step_tolerance", &SimConfig::step_tolerance)
        .def_readwrite("dnu_rel", &SimConfig::dnu_rel)
        .def_readwrite("strict_leakage", &SimConfig::strict_leakage)
        .def_property(
            "mode",
            [](const SimConfig& c) {
                return c.mode == OracleMode::rwa_sidebands_only ? "rwa_sidebands_only"
                                                                : "full_with_carrier";
            },
            [](SimConfig& c, const std::string& mode) {
                if (mode == "rwa_sidebands_only")
                    c.mode = OracleMode::rwa_sidebands_only;
                else if (mode == "full_with_carrier")
                    c.mode = OracleMode::full_with_carrier;
                else
                    throw std::invalid_argument("mode must be rwa_sidebands_only or full_with_carrier");
            });

    m.def("evolve",
          [](const GateDesign& d, const SimConfig& c, int initial_fock, double t_end) {
              const EvolveResult result = evolve(d, c, initial_fock, t_end);
              py::dict out;
              out["state"] = result.state;
              out["populations"] = quad_to_dict(reduce_state(result));
              out["steps"] = result.steps;
              out["step_size"] = result.step_size;
              out["norm_drift"] = result.norm_drift;
              out["top_level_population"] = result.top_level_population;
              out["leakage_exceeded"] = result.leakage_exceeded;
              return out;
          },
          py::arg("design"), py::arg("config"), py::arg("initial_fock"), py::arg("t_end"));
    m.def("thermal_average",
          [](const GateDesign& d, const SimConfig& c, double nbar, double t) {
              const ThermalEnsemble ens = ThermalEnsemble::build(nbar, c.n_max - 4);
              return quad_to_dict(thermal_average(d, c, ens, t));
          },
          py::arg("design"), py::arg("config"), py::arg("nbar"), py::arg("t"));
    m.def("ideal_target_state", []() { return Eigen::VectorXcd(ideal_target_state()); });
    m.def("carrier_infidelity_oracle",
          [](const GateDesign& d, double omega_over_nu, const SimConfig& c) {
              return carrier_infidelity_oracle(d, omega_over_nu, c);
          },
          py::arg("design"), py::arg("omega_over_nu"), py::arg("config") = SimConfig{});

    m.def("run_scan_json", [](const std::string& spec_text, int threads) {
        ScanSpec spec = scan_spec_from_json(nlohmann::json::parse(spec_text));
        spec.threads = threads;
        return rows_to_json(run_scan(spec)).dump();
    }, py::arg("spec_json"), py::arg("threads") = 1);
}
