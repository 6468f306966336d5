#include "memsbpf/electrostatics.hpp"

#include "memsbpf/error.hpp"
#include "memsbpf/units.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace memsbpf {

const char* to_string(SpringModel m) {
    return m == SpringModel::fixed_guided ? "fixed-guided" : "cantilever";
}

const char* to_string(PullInMethod m) {
    return m == PullInMethod::analytic ? "analytic" : "continuation";
}

PlateActuator PlateActuator::table1() {
    PlateActuator a;
    a.electrode_length = 320e-6;
    a.electrode_width = 220e-6;
    a.electrode_thickness = 0.5e-6;
    a.proof_mass_length = 340e-6;
    a.proof_mass_width = 240e-6;
    a.proof_mass_thickness = 2e-6;
    a.gap0 = 2e-6;
    a.beam_length = 100e-6;
    a.beam_width = 20e-6;
    a.beam_thickness = 2e-6;
    a.beam_count = 4;
    a.hole_side = 4e-6;
    a.hole_count = 100;
    a.fringing_factor = 1.0;
    return a;
}

double PlateActuator::overlap_area() const {
    return std::min(electrode_length * electrode_width, proof_mass_length * proof_mass_width);
}

double PlateActuator::hole_area_total() const {
    return hole_count * hole_side * hole_side;
}

double PlateActuator::effective_area() const {
    return fringing_factor * (overlap_area() - hole_area_total());
}

void PlateActuator::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw Error("bad_geometry", std::string(what) + " must be > 0");
    };
    positive(electrode_length, "electrode_length");
    positive(electrode_width, "electrode_width");
    positive(electrode_thickness, "electrode_thickness");
    positive(proof_mass_length, "proof_mass_length");
    positive(proof_mass_width, "proof_mass_width");
    positive(proof_mass_thickness, "proof_mass_thickness");
    positive(gap0, "gap0");
    positive(beam_length, "beam_length");
    positive(beam_width, "beam_width");
    positive(beam_thickness, "beam_thickness");
    if (beam_count < 1) throw Error("bad_geometry", "beam_count must be >= 1");
    if (hole_count < 0) throw Error("bad_geometry", "hole_count must be >= 0");
    if (hole_count > 0 && !(hole_side > 0.0))
        throw Error("bad_geometry", "hole_side must be > 0 when holes are present");
    if (!(hole_area_total() < overlap_area()))
        throw Error("bad_geometry", "total hole area must be smaller than the overlap area");
    if (!(fringing_factor >= 1.0))
        throw Error("bad_geometry", "fringing_factor must be >= 1");
}

void CVCurve::write_csv(std::ostream& out) const {
    out << "voltage_V,capacitance_F\n";
    for (const auto& p : points)
        out << units::format(p.voltage) << ',' << units::format(p.capacitance) << '\n';
}

nlohmann::json CVCurve::to_json() const {
    nlohmann::json j;
    j["pull_in_voltage"] = pull_in_voltage ? nlohmann::json(*pull_in_voltage) : nlohmann::json(nullptr);
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : points) pts.push_back({{"voltage_V", p.voltage}, {"capacitance_F", p.capacitance}});
    return j;
}

double overlap_capacitance(const PlateActuator& a, double gap) {
    a.validate();
    if (!(gap > 0.0)) throw Error("bad_input", "gap must be > 0");
    return vacuum_permittivity * a.effective_area() / gap;
}

double suspension_stiffness(const PlateActuator& a, SpringModel model, const Material& material) {
    a.validate();
    material.validate();
    double inertia = a.beam_width * a.beam_thickness * a.beam_thickness * a.beam_thickness / 12.0;
    double l3 = a.beam_length * a.beam_length * a.beam_length;
    double coeff = (model == SpringModel::fixed_guided) ? 12.0 : 3.0;
    return a.beam_count * coeff * material.youngs_modulus * inertia / l3;
}

namespace {

// Force-balance residual r(x) = k x - eps0 A V^2 / (2 (g - x)^2).
// r is concave on [0, g/3]; the stable root is the first up-crossing.
double force_residual(double x, double stiffness, double half_eps_a_v2, double gap0) {
    double d = gap0 - x;
    return stiffness * x - half_eps_a_v2 / (d * d);
}

} // namespace

std::optional<double> equilibrium_gap(const PlateActuator& a, double stiffness, double voltage) {
    a.validate();
    if (!(stiffness > 0.0)) throw Error("bad_input", "stiffness must be > 0");
    if (voltage < 0.0) throw Error("bad_input", "voltage must be >= 0");
    if (voltage == 0.0) return a.gap0;

    const double g = a.gap0;
    const double c = 0.5 * vacuum_permittivity * a.effective_area() * voltage * voltage;
    double lo = 0.0;
    double hi = g / 3.0;
    if (force_residual(hi, stiffness, c, g) < 0.0) return std::nullopt; // pulled in

    // Bisection to floating-point convergence; the interval stops shrinking
    // after ~60 iterations, well inside the 1e-12 m contract.
    double rlo = force_residual(lo, stiffness, c, g);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double rmid = force_residual(mid, stiffness, c, g);
        if ((rlo <= 0.0) == (rmid <= 0.0)) {
            lo = mid;
            rlo = rmid;
        } else {
            hi = mid;
        }
    }
    return g - 0.5 * (lo + hi);
}

double pull_in_voltage(const PlateActuator& a, double stiffness, PullInMethod method) {
    a.validate();
    if (!(stiffness > 0.0)) throw Error("bad_input", "stiffness must be > 0");
    const double g = a.gap0;
    const double analytic =
        std::sqrt(8.0 * stiffness * g * g * g / (27.0 * vacuum_permittivity * a.effective_area()));
    if (method == PullInMethod::analytic) return analytic;

    // Continuation: bisect on the smallest voltage whose equilibrium solve
    // reports pull-in. The analytic value brackets the answer for this
    // force model; keep a doubling fallback in case of extreme inputs.
    double lo = 0.0;
    double hi = analytic * 1.25;
    for (int i = 0; i < 64 && equilibrium_gap(a, stiffness, hi).has_value(); ++i) hi *= 2.0;
    if (equilibrium_gap(a, stiffness, hi))
        throw Error("no_pull_in", "no pull-in voltage found below " + units::format(hi) + " V");
    for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (equilibrium_gap(a, stiffness, mid))
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

CVCurve cv_curve(const PlateActuator& a, double stiffness, double v_start, double v_stop, int steps) {
    a.validate();
    if (!(v_start >= 0.0) || !(v_start < v_stop))
        throw Error("bad_input", "require 0 <= v_start < v_stop");
    if (steps < 2) throw Error("bad_input", "steps must be >= 2");

    CVCurve curve;
    const double g = a.gap0;
    bool truncated = false;
    for (int i = 0; i < steps; ++i) {
        double v = v_start + (v_stop - v_start) * static_cast<double>(i) / (steps - 1);
        auto gap = equilibrium_gap(a, stiffness, v);
        if (!gap) {
            truncated = true;
            break;
        }
        curve.points.push_back({v, overlap_capacitance(a, *gap)});
    }
    if (truncated) {
        double vpi = pull_in_voltage(a, stiffness, PullInMethod::continuation);
        curve.pull_in_voltage = vpi;
        // Close the stable branch with its limit point: displacement g/3.
        double c_limit = overlap_capacitance(a, 2.0 * g / 3.0);
        if (curve.points.empty() || vpi > curve.points.back().voltage * (1.0 + 1e-12))
            curve.points.push_back({vpi, c_limit});
        else
            curve.points.back().capacitance = c_limit;
    }
    return curve;
}

} // namespace memsbpf
