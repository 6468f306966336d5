#include "memsbpf/synthesis.hpp"

#include "memsbpf/error.hpp"
#include "memsbpf/units.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace memsbpf {

const char* to_string(Topology t) { return t == Topology::rc ? "rc" : "resonator"; }

void DesignSpec::validate() const {
    if (!(f0_target > 0.0)) throw Error("bad_input", "f0 target must be > 0");
    if (topology == Topology::resonator && !(q_target > 0.0))
        throw Error("bad_input", "Q target must be > 0 for the resonator topology");
}

double SerpentineLayout::resistance() const {
    return serpentine_resistance(segment_length, width, n_segments, n_corners, sheet_resistance);
}

double SerpentineLayout::bounding_area() const {
    double across = n_segments * width + (n_segments > 1 ? (n_segments - 1) * spacing : 0.0);
    return segment_length * across;
}

namespace {

SerpentineLayout fit_serpentine(double target_resistance, double sheet_resistance,
                                double segment_length, double width) {
    SerpentineLayout l;
    l.segment_length = segment_length;
    l.width = width;
    l.spacing = width; // drawn with one line-width of clearance
    l.sheet_resistance = sheet_resistance;
    double squares_per_segment = segment_length / width;
    // n segments contribute n * squares + 0.56 (n - 1) corner squares
    double n = (target_resistance / sheet_resistance + 0.56) / (squares_per_segment + 0.56);
    l.n_segments = std::max(1, static_cast<int>(std::lround(n)));
    l.n_corners = l.n_segments - 1;
    return l;
}

} // namespace

FullDesign synthesize_design(const DesignSpec& spec, const PlateActuator& actuator,
                             SpringModel spring, double thickness, double gap,
                             const Material& material, const Ambient& ambient,
                             double sheet_resistance, double serpentine_segment_length,
                             double serpentine_width, double bias_voltage,
                             double drive_amplitude) {
    spec.validate();
    FullDesign design;
    design.spec = spec;

    if (spec.topology == Topology::rc) {
        RcDesign rc;
        rc.actuator = actuator;
        rc.spring = spring;
        rc.stiffness = suspension_stiffness(actuator, spring, material);
        rc.c0 = overlap_capacitance(actuator, actuator.gap0);
        rc.resistance = synthesize_resistance(spec.f0_target, rc.c0);
        rc.pull_in = pull_in_voltage(actuator, rc.stiffness, PullInMethod::continuation);
        rc.layout = fit_serpentine(rc.resistance, sheet_resistance, serpentine_segment_length,
                                   serpentine_width);
        design.rc = rc;
    } else {
        ResonatorDesign res;
        double length = synthesize_length(spec.f0_target, thickness, material);
        double width = synthesize_width(spec.q_target, thickness, gap, spec.f0_target, material,
                                        ambient);
        res.beam = CantileverBeam{length, width, thickness, gap, material};
        res.lumped = lumped_params(res.beam);
        res.q = spec.q_target;
        res.drive.bias_voltage = bias_voltage;
        res.drive.drive_amplitude = drive_amplitude;
        res.drive.electrode_area = (length / 3.0) * width; // input/output electrodes under the beam
        res.drive.termination = 0.0;
        design.resonator = res;
    }
    return design;
}

nlohmann::json Tunability::to_json() const {
    return {{"dc_over_c", dc_over_c}, {"df0_over_f0", df0_over_f0}};
}

Tunability tunability(const CVCurve& cv) {
    if (!cv.pull_in_voltage)
        throw Error("no_pull_in_in_range", "C-V curve does not reach pull-in");
    if (cv.points.size() < 2) throw Error("bad_input", "C-V curve needs at least 2 points");
    Tunability t;
    t.dc_over_c = cv.points.back().capacitance / cv.points.front().capacitance - 1.0;
    t.df0_over_f0 = 1.0 / (1.0 + t.dc_over_c) - 1.0;
    return t;
}

FootprintEstimate footprint_area(const RcDesign& d) {
    FootprintEstimate e;
    double varactor = d.actuator.proof_mass_length * d.actuator.proof_mass_width;
    double resistor = d.layout.bounding_area();
    e.area = varactor + resistor;
    e.method = "proof-mass bounding box + serpentine bounding box";
    return e;
}

FootprintEstimate footprint_area(const ResonatorDesign& d) {
    FootprintEstimate e;
    e.area = d.beam.length * d.beam.width;
    e.method = "beam bounding box (drive/sense electrodes lie underneath)";
    return e;
}

nlohmann::json TopologyReport::to_json() const {
    nlohmann::json j;
    j["topology"] = topology;
    j["f0_Hz"] = f0;
    j["q"] = q;
    j["footprint_area_m2"] = footprint.area;
    j["footprint_method"] = footprint.method;
    j["tunability"] = tunability ? tunability->to_json() : nlohmann::json(nullptr);
    auto& dims = j["key_dimensions_m"] = nlohmann::json::object();
    for (const auto& [name, value] : key_dimensions) dims[name] = value;
    return j;
}

namespace {

TopologyReport topology_report_from_json(const nlohmann::json& j) {
    TopologyReport r;
    r.topology = j.at("topology").get<std::string>();
    r.f0 = j.at("f0_Hz").get<double>();
    r.q = j.at("q").get<double>();
    r.footprint.area = j.at("footprint_area_m2").get<double>();
    r.footprint.method = j.at("footprint_method").get<std::string>();
    if (!j.at("tunability").is_null()) {
        Tunability t;
        t.dc_over_c = j.at("tunability").at("dc_over_c").get<double>();
        t.df0_over_f0 = j.at("tunability").at("df0_over_f0").get<double>();
        r.tunability = t;
    }
    for (const auto& [name, value] : j.at("key_dimensions_m").items())
        r.key_dimensions.emplace_back(name, value.get<double>());
    return r;
}

} // namespace

nlohmann::json ComparisonReport::to_json() const {
    nlohmann::json j;
    j["rc"] = rc.to_json();
    j["resonator"] = resonator.to_json();
    j["q_ratio"] = q_ratio;
    j["area_ratio"] = area_ratio;
    j["findings"] = findings;
    return j;
}

ComparisonReport ComparisonReport::from_json(const nlohmann::json& j) {
    ComparisonReport r;
    r.rc = topology_report_from_json(j.at("rc"));
    r.resonator = topology_report_from_json(j.at("resonator"));
    r.q_ratio = j.at("q_ratio").get<double>();
    r.area_ratio = j.at("area_ratio").get<double>();
    r.findings = j.at("findings").get<std::vector<std::string>>();
    return r;
}

void ComparisonReport::write_table(std::ostream& out) const {
    auto row = [&](const std::string& label, const std::string& a, const std::string& b) {
        out << std::left << std::setw(28) << label << std::setw(26) << a << b << '\n';
    };
    row("", "rc", "resonator");
    row("f0", units::format_eng(rc.f0, "Hz"), units::format_eng(resonator.f0, "Hz"));
    row("Q", units::format(rc.q, 6), units::format(resonator.q, 6));
    row("area", units::format(rc.footprint.area, 6) + " m^2",
        units::format(resonator.footprint.area, 6) + " m^2");
    auto tun = [](const std::optional<Tunability>& t) {
        if (!t) return std::string("n/a");
        return "dC/C " + units::format(t->dc_over_c * 100.0, 4) + "%, df0/f0 " +
               units::format(t->df0_over_f0 * 100.0, 4) + "%";
    };
    row("tunability", tun(rc.tunability), tun(resonator.tunability));
    for (const auto& [name, value] : rc.key_dimensions)
        row("rc " + name, units::format_eng(value, "m"), "");
    for (const auto& [name, value] : resonator.key_dimensions)
        row("resonator " + name, "", units::format_eng(value, "m"));
    out << '\n';
    for (const auto& f : findings) out << "- " << f << '\n';
}

ComparisonReport compare(const RcDesign& rc, const ResonatorDesign& resonator) {
    ComparisonReport report;

    // RC side: Q of the single-cell band-pass is 1/3 independent of R and C;
    // report the analysed value from the curve rather than the constant.
    RCFilter filt{rc.resistance, rc.c0};
    double f0_rc = rc_center_frequency(filt);
    auto rc_curve = rc_response_curve(filt, log_grid(f0_rc / 100.0, f0_rc * 100.0, 200));
    auto rc_summary = half_power_analysis(rc_curve);

    report.rc.topology = "rc";
    report.rc.f0 = f0_rc;
    report.rc.q = rc_summary.q;
    report.rc.footprint = footprint_area(rc);
    auto cv = cv_curve(rc.actuator, rc.stiffness, 0.0, rc.pull_in * 1.001, 201);
    report.rc.tunability = tunability(cv);
    report.rc.key_dimensions = {
        {"proof_mass_length", rc.actuator.proof_mass_length},
        {"proof_mass_width", rc.actuator.proof_mass_width},
        {"gap0", rc.actuator.gap0},
        {"resistor_segment_length", rc.layout.segment_length},
    };

    report.resonator.topology = "resonator";
    report.resonator.f0 = natural_frequency(resonator.beam, 1);
    report.resonator.q = resonator.q;
    report.resonator.footprint = footprint_area(resonator);
    report.resonator.tunability = std::nullopt; // fixed mechanical resonance
    report.resonator.key_dimensions = {
        {"length", resonator.beam.length},
        {"width", resonator.beam.width},
        {"thickness", resonator.beam.thickness},
        {"gap", resonator.beam.gap},
    };

    report.q_ratio = report.resonator.q / report.rc.q;
    report.area_ratio = report.rc.footprint.area / report.resonator.footprint.area;

    std::ostringstream f1;
    f1 << "quality factor: resonator Q = " << units::format(report.resonator.q, 4)
       << " vs rc Q = " << units::format(report.rc.q, 4) << " (ratio "
       << units::format(report.q_ratio, 4) << ")";
    report.findings.push_back(f1.str());

    std::ostringstream f2;
    f2 << "footprint: rc " << units::format(report.rc.footprint.area, 4) << " m^2 vs resonator "
       << units::format(report.resonator.footprint.area, 4) << " m^2 (ratio "
       << units::format(report.area_ratio, 4) << ")";
    report.findings.push_back(f2.str());

    const Tunability& t = *report.rc.tunability;
    std::ostringstream f3;
    f3 << "tunability: rc dC/C = " << units::format(t.dc_over_c * 100.0, 4)
       << "% before pull-in; the centre frequency shifts by df0/f0 = "
       << units::format(t.df0_over_f0 * 100.0, 4)
       << "% (1/(1+dC/C)-1), not by the capacitance swing itself. "
          "The resonator frequency is fixed by geometry (no comparable tuning knob).";
    report.findings.push_back(f3.str());

    report.findings.push_back("spring model for the rc varactor pull-in: " +
                              std::string(to_string(rc.spring)));
    return report;
}

} // namespace memsbpf
