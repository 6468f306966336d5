#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "memsbpf/beam.hpp"
#include "memsbpf/damping.hpp"
#include "memsbpf/electrostatics.hpp"
#include "memsbpf/error.hpp"
#include "memsbpf/filters.hpp"
#include "memsbpf/materials.hpp"
#include "memsbpf/measurement.hpp"
#include "memsbpf/synthesis.hpp"

#include <sstream>

namespace py = pybind11;
using namespace memsbpf;

PYBIND11_MODULE(memsbpf, m) {
    m.doc() = "MEMS band-pass filter design toolkit: parallel-plate varactor/RC "
              "and electrostatic cantilever resonator topologies";

    static py::exception<Error> error_type(m, "MemsbpfError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            error_type(e.what());
        }
    });

    m.attr("VACUUM_PERMITTIVITY") = vacuum_permittivity;

    // ---- materials
    py::class_<Material>(m, "Material")
        .def(py::init([](std::string name, double e, double rho) {
                 return Material{std::move(name), e, rho};
             }),
             py::arg("name"), py::arg("youngs_modulus"), py::arg("density"))
        .def_readwrite("name", &Material::name)
        .def_readwrite("youngs_modulus", &Material::youngs_modulus)
        .def_readwrite("density", &Material::density);

    py::class_<Ambient>(m, "Ambient")
        .def(py::init([](double mu, double eps) { return Ambient{mu, eps}; }),
             py::arg("dynamic_viscosity"), py::arg("permittivity"))
        .def_readwrite("dynamic_viscosity", &Ambient::dynamic_viscosity)
        .def_readwrite("permittivity", &Ambient::permittivity);

    py::class_<MaterialRegistry>(m, "MaterialRegistry")
        .def_static("with_defaults", &MaterialRegistry::with_defaults)
        .def("material", &MaterialRegistry::material, py::arg("name"))
        .def("ambient", &MaterialRegistry::ambient, py::arg("name"))
        .def("load_config_file", &MaterialRegistry::load_config_file, py::arg("path"));

    // ---- electrostatics
    py::enum_<SpringModel>(m, "SpringModel")
        .value("fixed_guided", SpringModel::fixed_guided)
        .value("cantilever", SpringModel::cantilever);

    py::enum_<PullInMethod>(m, "PullInMethod")
        .value("analytic", PullInMethod::analytic)
        .value("continuation", PullInMethod::continuation);

    py::class_<PlateActuator>(m, "PlateActuator")
        .def(py::init<>())
        .def_static("table1", &PlateActuator::table1)
        .def_readwrite("electrode_length", &PlateActuator::electrode_length)
        .def_readwrite("electrode_width", &PlateActuator::electrode_width)
        .def_readwrite("electrode_thickness", &PlateActuator::electrode_thickness)
        .def_readwrite("proof_mass_length", &PlateActuator::proof_mass_length)
        .def_readwrite("proof_mass_width", &PlateActuator::proof_mass_width)
        .def_readwrite("proof_mass_thickness", &PlateActuator::proof_mass_thickness)
        .def_readwrite("gap0", &PlateActuator::gap0)
        .def_readwrite("beam_length", &PlateActuator::beam_length)
        .def_readwrite("beam_width", &PlateActuator::beam_width)
        .def_readwrite("beam_thickness", &PlateActuator::beam_thickness)
        .def_readwrite("beam_count", &PlateActuator::beam_count)
        .def_readwrite("hole_side", &PlateActuator::hole_side)
        .def_readwrite("hole_count", &PlateActuator::hole_count)
        .def_readwrite("fringing_factor", &PlateActuator::fringing_factor)
        .def("overlap_area", &PlateActuator::overlap_area)
        .def("effective_area", &PlateActuator::effective_area);

    py::class_<CVPoint>(m, "CVPoint")
        .def_readonly("voltage", &CVPoint::voltage)
        .def_readonly("capacitance", &CVPoint::capacitance);

    py::class_<CVCurve>(m, "CVCurve")
        .def(py::init<>())
        .def_readwrite("points", &CVCurve::points)
        .def_readwrite("pull_in_voltage", &CVCurve::pull_in_voltage)
        .def("csv", [](const CVCurve& c) {
            std::ostringstream out;
            c.write_csv(out);
            return out.str();
        })
        .def("json", [](const CVCurve& c) { return c.to_json().dump(); });

    m.def("overlap_capacitance", &overlap_capacitance, py::arg("actuator"), py::arg("gap"));
    m.def("suspension_stiffness", &suspension_stiffness, py::arg("actuator"), py::arg("model"),
          py::arg("material"));
    m.def("equilibrium_gap", &equilibrium_gap, py::arg("actuator"), py::arg("stiffness"),
          py::arg("voltage"), "Stable gap under bias, or None once pulled in");
    m.def("pull_in_voltage", &pull_in_voltage, py::arg("actuator"), py::arg("stiffness"),
          py::arg("method") = PullInMethod::analytic);
    m.def("cv_curve", &cv_curve, py::arg("actuator"), py::arg("stiffness"), py::arg("v_start"),
          py::arg("v_stop"), py::arg("steps"));

    // ---- beam mechanics
    py::class_<CantileverBeam>(m, "CantileverBeam")
        .def(py::init([](double length, double width, double thickness, double gap, Material mat) {
                 return CantileverBeam{length, width, thickness, gap, std::move(mat)};
             }),
             py::arg("length"), py::arg("width"), py::arg("thickness"), py::arg("gap"),
             py::arg("material"))
        .def_readwrite("length", &CantileverBeam::length)
        .def_readwrite("width", &CantileverBeam::width)
        .def_readwrite("thickness", &CantileverBeam::thickness)
        .def_readwrite("gap", &CantileverBeam::gap)
        .def_readwrite("material", &CantileverBeam::material)
        .def("warnings", &CantileverBeam::warnings);

    py::class_<ModalResult>(m, "ModalResult")
        .def_readonly("mode_index", &ModalResult::mode_index)
        .def_readonly("frequency", &ModalResult::frequency)
        .def_readonly("mode_constant", &ModalResult::mode_constant)
        .def_readonly("x", &ModalResult::x)
        .def_readonly("phi", &ModalResult::phi)
        .def("csv", [](const ModalResult& r) {
            std::ostringstream out;
            r.write_csv(out);
            return out.str();
        });

    py::class_<LumpedBeam>(m, "LumpedBeam")
        .def_readonly("k_eff", &LumpedBeam::k_eff)
        .def_readonly("m_eff", &LumpedBeam::m_eff)
        .def("omega1", &LumpedBeam::omega1);

    m.def("mode_constants", &mode_constants, py::arg("n_max"));
    m.def("natural_frequency", &natural_frequency, py::arg("beam"), py::arg("n") = 1);
    m.def("mode_shape", &mode_shape, py::arg("beam"), py::arg("n"), py::arg("samples"));
    m.def("fd_modal_frequencies", &fd_modal_frequencies, py::arg("beam"), py::arg("nodes"),
          "Finite-difference eigensolve cross-check of the analytic frequencies");
    m.def("synthesize_length", &synthesize_length, py::arg("f_target"), py::arg("thickness"),
          py::arg("material"));
    m.def("lumped_params", &lumped_params, py::arg("beam"));

    // ---- damping
    m.def("squeeze_film_q", &squeeze_film_q, py::arg("beam"), py::arg("ambient"),
          py::arg("frequency") = py::none());
    m.def("synthesize_width", &synthesize_width, py::arg("q_target"), py::arg("thickness"),
          py::arg("gap"), py::arg("frequency"), py::arg("material"), py::arg("ambient"));

    // ---- filters
    py::class_<RCFilter>(m, "RCFilter")
        .def(py::init([](double r, double c) { return RCFilter{r, c}; }), py::arg("resistance"),
             py::arg("capacitance"))
        .def_readwrite("resistance", &RCFilter::resistance)
        .def_readwrite("capacitance", &RCFilter::capacitance);

    py::class_<ResponsePoint>(m, "ResponsePoint")
        .def_readonly("frequency", &ResponsePoint::frequency)
        .def_readonly("magnitude", &ResponsePoint::magnitude)
        .def_readonly("phase", &ResponsePoint::phase);

    py::class_<ResponseCurve>(m, "ResponseCurve")
        .def_readonly("points", &ResponseCurve::points)
        .def_readonly("source", &ResponseCurve::source)
        .def("csv", [](const ResponseCurve& c) {
            std::ostringstream out;
            c.write_csv(out);
            return out.str();
        });

    py::class_<BandpassSummary>(m, "BandpassSummary")
        .def_readonly("f_low", &BandpassSummary::f_low)
        .def_readonly("f_high", &BandpassSummary::f_high)
        .def_readonly("f_center", &BandpassSummary::f_center)
        .def_readonly("q", &BandpassSummary::q);

    py::class_<ResonatorDrive>(m, "ResonatorDrive")
        .def(py::init([](double vp, double vi, double area, double ro) {
                 return ResonatorDrive{vp, vi, area, ro};
             }),
             py::arg("bias_voltage"), py::arg("drive_amplitude"), py::arg("electrode_area"),
             py::arg("termination") = 0.0)
        .def_readwrite("bias_voltage", &ResonatorDrive::bias_voltage)
        .def_readwrite("drive_amplitude", &ResonatorDrive::drive_amplitude)
        .def_readwrite("electrode_area", &ResonatorDrive::electrode_area)
        .def_readwrite("termination", &ResonatorDrive::termination);

    py::class_<ResonatorOperatingPoint>(m, "ResonatorOperatingPoint")
        .def_readonly("tip_displacement", &ResonatorOperatingPoint::tip_displacement)
        .def_readonly("c_fix", &ResonatorOperatingPoint::c_fix)
        .def_readonly("c_var", &ResonatorOperatingPoint::c_var)
        .def_readonly("output_current", &ResonatorOperatingPoint::output_current);

    m.def("rc_response", &rc_response, py::arg("filter"), py::arg("frequency"));
    m.def("rc_center_frequency", &rc_center_frequency, py::arg("filter"));
    m.def("log_grid", &log_grid, py::arg("f_start"), py::arg("f_stop"),
          py::arg("points_per_decade"));
    m.def("rc_response_curve", &rc_response_curve, py::arg("filter"), py::arg("grid"));
    m.def("half_power_analysis", &half_power_analysis, py::arg("curve"));
    m.def("synthesize_resistance", &synthesize_resistance, py::arg("f0"), py::arg("capacitance"));
    m.def("serpentine_resistance", &serpentine_resistance, py::arg("segment_length"),
          py::arg("width"), py::arg("n_segments"), py::arg("n_corners"),
          py::arg("sheet_resistance"));
    m.def("resonator_response", &resonator_response, py::arg("beam"), py::arg("lumped"),
          py::arg("q"), py::arg("drive"), py::arg("frequency"));
    m.def("resonator_bandpass_curve", &resonator_bandpass_curve, py::arg("beam"),
          py::arg("lumped"), py::arg("q"), py::arg("drive"), py::arg("grid"),
          py::arg("normalize") = false);

    // ---- measurement
    py::enum_<CurveKind>(m, "CurveKind")
        .value("cv", CurveKind::cv)
        .value("spectrum", CurveKind::spectrum);

    py::class_<MeasuredCurve>(m, "MeasuredCurve")
        .def_readonly("kind", &MeasuredCurve::kind)
        .def_readonly("x", &MeasuredCurve::x)
        .def_readonly("y", &MeasuredCurve::y)
        .def_readonly("label", &MeasuredCurve::label)
        .def_readonly("x_unit", &MeasuredCurve::x_unit)
        .def_readonly("y_unit", &MeasuredCurve::y_unit);

    py::class_<ResonancePeak>(m, "ResonancePeak")
        .def_readonly("frequency", &ResonancePeak::frequency)
        .def_readonly("amplitude", &ResonancePeak::amplitude)
        .def_readonly("q", &ResonancePeak::q);

    m.def("load_curve", &load_curve, py::arg("path"), py::arg("kind"));
    m.def("extract_parasitic", &extract_parasitic, py::arg("measured"), py::arg("model"));
    m.def("find_resonance_peak", &find_resonance_peak, py::arg("spectrum"));

    // ---- synthesis / comparison
    py::enum_<Topology>(m, "Topology").value("rc", Topology::rc).value("resonator",
                                                                       Topology::resonator);

    py::class_<Tunability>(m, "Tunability")
        .def_readonly("dc_over_c", &Tunability::dc_over_c)
        .def_readonly("df0_over_f0", &Tunability::df0_over_f0);

    m.def("tunability", &tunability, py::arg("cv"));

    m.def(
        "compare_designs",
        [](double f0, double q, const PlateActuator& actuator, SpringModel spring,
           double thickness, double gap, const Material& material, const Ambient& ambient,
           double sheet_resistance, double segment_length, double segment_width,
           double bias_voltage, double drive_amplitude) {
            DesignSpec rc_spec{f0, 0.0, Topology::rc};
            auto rc = synthesize_design(rc_spec, actuator, spring, thickness, gap, material,
                                        ambient, sheet_resistance, segment_length, segment_width,
                                        bias_voltage, drive_amplitude);
            DesignSpec res_spec{f0, q, Topology::resonator};
            auto res = synthesize_design(res_spec, actuator, spring, thickness, gap, material,
                                         ambient, sheet_resistance, segment_length, segment_width,
                                         bias_voltage, drive_amplitude);
            return compare(*rc.rc, *res.resonator).to_json().dump();
        },
        py::arg("f0"), py::arg("q"), py::arg("actuator"), py::arg("spring"),
        py::arg("thickness") = 2e-6, py::arg("gap") = 2e-6,
        py::arg("material") = Material{"polysilicon", 160e9, 2330.0},
        py::arg("ambient") = Ambient{1.81e-5, vacuum_permittivity},
        py::arg("sheet_resistance") = 30.0, py::arg("segment_length") = 300e-6,
        py::arg("segment_width") = 1e-6, py::arg("bias_voltage") = 10.0,
        py::arg("drive_amplitude") = 0.1,
        "Synthesize both topologies for one target and return the comparison report as JSON");
}
