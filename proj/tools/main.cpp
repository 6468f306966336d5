// memsbpf: design and analysis of MEMS band-pass filters, both the
// varactor/resistor RC topology and the electrostatically driven cantilever
// resonator topology. Every value is SI; flags take plain scientific
// notation (76.7e-6, not "76.7um").

#include "memsbpf/beam.hpp"
#include "memsbpf/damping.hpp"
#include "memsbpf/electrostatics.hpp"
#include "memsbpf/error.hpp"
#include "memsbpf/filters.hpp"
#include "memsbpf/materials.hpp"
#include "memsbpf/measurement.hpp"
#include "memsbpf/synthesis.hpp"
#include "memsbpf/units.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace memsbpf;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    MaterialRegistry registry = MaterialRegistry::with_defaults();

    void load() {
        if (!config_path.empty()) registry.load_config_file(config_path);
    }
};

// `--h` is a real flag (beam thickness), so help is long-form only.
CLI::App* sub(CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* cmd = parent->add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print help");
    return cmd;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_output = true) {
    cmd->add_option("--config", opts.config_path, "material/ambient config file (key = value)");
    if (with_output) {
        cmd->add_option("--out", opts.out_path, "write curve/report data to this file");
        cmd->add_option("--format", opts.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    }
}

void write_output(const CommonOptions& opts, const std::function<void(std::ostream&)>& csv,
                  const std::function<nlohmann::json()>& json) {
    if (opts.out_path.empty()) return;
    std::ofstream out(opts.out_path);
    if (!out) throw Error("io", "cannot open output file '" + opts.out_path + "'");
    if (opts.format == "json")
        out << json().dump(2) << '\n';
    else
        csv(out);
}

struct ActuatorOptions {
    std::string preset;
    PlateActuator actuator = PlateActuator::table1();
    std::string spring = "fixed-guided";

    SpringModel spring_model() const {
        if (spring == "fixed-guided") return SpringModel::fixed_guided;
        if (spring == "cantilever") return SpringModel::cantilever;
        throw Error("usage", "unknown spring model '" + spring + "'");
    }
};

void add_actuator(CLI::App* cmd, ActuatorOptions& opts) {
    cmd->add_option("--preset", opts.preset, "geometry preset (table1)")
        ->check(CLI::IsMember({"table1"}));
    cmd->add_option("--electrode-length", opts.actuator.electrode_length, "m");
    cmd->add_option("--electrode-width", opts.actuator.electrode_width, "m");
    cmd->add_option("--proof-mass-length", opts.actuator.proof_mass_length, "m");
    cmd->add_option("--proof-mass-width", opts.actuator.proof_mass_width, "m");
    cmd->add_option("--gap0", opts.actuator.gap0, "initial air gap, m");
    cmd->add_option("--beam-length", opts.actuator.beam_length, "m");
    cmd->add_option("--beam-width", opts.actuator.beam_width, "m");
    cmd->add_option("--beam-thickness", opts.actuator.beam_thickness, "m");
    cmd->add_option("--beam-count", opts.actuator.beam_count);
    cmd->add_option("--hole-side", opts.actuator.hole_side, "m");
    cmd->add_option("--hole-count", opts.actuator.hole_count);
    cmd->add_option("--fringing", opts.actuator.fringing_factor,
                    "capacitance calibration factor (>= 1)");
    cmd->add_option("--spring", opts.spring, "suspension model: fixed-guided | cantilever")
        ->check(CLI::IsMember({"fixed-guided", "cantilever"}));
}

struct BeamOptions {
    double length = 76.7e-6;
    double width = 10e-6;
    double thickness = 2e-6;
    double gap = 2e-6;
    std::string material = "polysilicon";

    CantileverBeam beam(const MaterialRegistry& reg) const {
        return CantileverBeam{length, width, thickness, gap, reg.material(material)};
    }
};

void add_beam(CLI::App* cmd, BeamOptions& opts) {
    cmd->add_option("--L", opts.length, "beam length, m");
    cmd->add_option("--b", opts.width, "beam width, m");
    cmd->add_option("--h", opts.thickness, "beam thickness, m");
    cmd->add_option("--gap", opts.gap, "beam-to-electrode gap, m");
    cmd->add_option("--material", opts.material, "material name from the registry");
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::string fmt(double v) { return units::format(v, 6); }

// ---------------------------------------------------------------- varactor

int run_varactor_cv(CommonOptions& common, ActuatorOptions& act, double v_start, double v_stop,
                    int steps) {
    common.load();
    const Material& mat = common.registry.material("polysilicon");
    double k = suspension_stiffness(act.actuator, act.spring_model(), mat);
    CVCurve curve = cv_curve(act.actuator, k, v_start, v_stop, steps);
    write_output(common, [&](std::ostream& o) { curve.write_csv(o); },
                 [&] { return curve.to_json(); });
    std::cout << "points=" << curve.points.size() << " C0_F=" << fmt(curve.points.front().capacitance)
              << " (" << units::format_eng(curve.points.front().capacitance, "F") << ")"
              << " Cmax_F=" << fmt(curve.points.back().capacitance) << " spring=" << act.spring
              << " k_N_per_m=" << fmt(k);
    if (curve.pull_in_voltage)
        std::cout << " pull_in_V=" << fmt(*curve.pull_in_voltage);
    std::cout << '\n';
    return 0;
}

int run_varactor_pullin(CommonOptions& common, ActuatorOptions& act, const std::string& method) {
    common.load();
    const Material& mat = common.registry.material("polysilicon");
    double k = suspension_stiffness(act.actuator, act.spring_model(), mat);
    PullInMethod m = method == "analytic" ? PullInMethod::analytic : PullInMethod::continuation;
    double vpi = pull_in_voltage(act.actuator, k, m);
    std::cout << "V_pi_V=" << fmt(vpi) << " method=" << method << " spring=" << act.spring
              << " k_N_per_m=" << fmt(k)
              << " note=lumped " << act.spring << " spring model";
    if (act.preset == "table1")
        std::cout << "; coupled-FEM reference for this device is 8.81 V";
    std::cout << '\n';
    return 0;
}

// -------------------------------------------------------------------- beam

int run_beam_modes(CommonOptions& common, BeamOptions& beam_opts, int n_modes, int samples,
                   int fd_nodes, int shape_mode) {
    common.load();
    CantileverBeam beam = beam_opts.beam(common.registry);
    print_warnings(beam.warnings());
    std::cout << "L_m=" << fmt(beam.length);
    for (int n = 1; n <= n_modes; ++n)
        std::cout << " f" << n << "_Hz=" << fmt(natural_frequency(beam, n));
    if (fd_nodes > 0) {
        auto fd = fd_modal_frequencies(beam, fd_nodes);
        for (size_t i = 0; i < fd.size(); ++i)
            std::cout << " fd" << (i + 1) << "_Hz=" << fmt(fd[i]);
    }
    std::cout << '\n';
    ModalResult shape = mode_shape(beam, shape_mode, samples);
    write_output(common, [&](std::ostream& o) { shape.write_csv(o); },
                 [&] { return shape.to_json(); });
    return 0;
}

int run_beam_synth(CommonOptions& common, double f0, double thickness,
                   const std::string& material) {
    common.load();
    const Material& mat = common.registry.material(material);
    double length = synthesize_length(f0, thickness, mat);
    CantileverBeam check{length, 10e-6, thickness, 2e-6, mat};
    std::cout << "L_m=" << fmt(length) << " (" << units::format_eng(length, "m") << ")"
              << " f1_check_Hz=" << fmt(natural_frequency(check, 1)) << '\n';
    return 0;
}

// ----------------------------------------------------------------- damping

int run_damping_q(CommonOptions& common, BeamOptions& beam_opts, double frequency) {
    common.load();
    CantileverBeam beam = beam_opts.beam(common.registry);
    print_warnings(beam.warnings());
    const Ambient& air = common.registry.ambient("air");
    std::optional<double> f_override;
    if (frequency > 0.0) f_override = frequency;
    double f_used = f_override.value_or(natural_frequency(beam, 1));
    double q = squeeze_film_q(beam, air, f_override);
    std::cout << "Q=" << fmt(q) << " f_Hz=" << fmt(f_used) << " b_m=" << fmt(beam.width) << '\n';
    return 0;
}

int run_damping_synth_width(CommonOptions& common, double q_target, double thickness, double gap,
                            double frequency, const std::string& material) {
    common.load();
    const Material& mat = common.registry.material(material);
    const Ambient& air = common.registry.ambient("air");
    double width = synthesize_width(q_target, thickness, gap, frequency, mat, air);
    std::cout << "b_m=" << fmt(width) << " (" << units::format_eng(width, "m") << ")"
              << " Q_target=" << fmt(q_target) << '\n';
    return 0;
}

// ------------------------------------------------------------------ filter

int run_filter_rc(CommonOptions& common, double resistance, double capacitance, bool analyze,
                  double f_start, double f_stop, int ppd) {
    common.load();
    RCFilter filt{resistance, capacitance};
    double f0 = rc_center_frequency(filt);
    if (f_start <= 0.0) f_start = f0 / 100.0;
    if (f_stop <= 0.0) f_stop = f0 * 100.0;
    auto curve = rc_response_curve(filt, log_grid(f_start, f_stop, ppd));
    std::optional<BandpassSummary> summary;
    if (analyze) summary = half_power_analysis(curve);
    write_output(common, [&](std::ostream& o) { curve.write_csv(o); },
                 [&] {
                     auto j = curve.to_json();
                     if (summary) j["analysis"] = summary->to_json();
                     return j;
                 });
    std::cout << "f0_Hz=" << fmt(f0) << " (" << units::format_eng(f0, "Hz") << ")";
    if (summary)
        std::cout << " f_center_Hz=" << fmt(summary->f_center) << " f_low_Hz=" << fmt(summary->f_low)
                  << " f_high_Hz=" << fmt(summary->f_high) << " q=" << fmt(summary->q);
    std::cout << '\n';
    return 0;
}

int run_filter_synth_r(CommonOptions& common, double f0, double capacitance) {
    common.load();
    double r = synthesize_resistance(f0, capacitance);
    std::cout << "R_ohm=" << fmt(r) << " (" << units::format_eng(r, "ohm") << ")" << '\n';
    return 0;
}

int run_filter_serpentine(CommonOptions& common, double segment_length, double width,
                          int n_segments, int n_corners, double sheet_resistance) {
    common.load();
    double r = serpentine_resistance(segment_length, width, n_segments, n_corners, sheet_resistance);
    std::cout << "R_ohm=" << fmt(r) << " (" << units::format_eng(r, "ohm") << ")"
              << " squares=" << fmt(n_segments * segment_length / width + 0.56 * n_corners) << '\n';
    return 0;
}

int run_filter_resonator(CommonOptions& common, BeamOptions& beam_opts, double q_in, double bias,
                         double drive_amp, double electrode_area, double f_start, double f_stop,
                         int ppd, bool normalize) {
    common.load();
    CantileverBeam beam = beam_opts.beam(common.registry);
    print_warnings(beam.warnings());
    const Ambient& air = common.registry.ambient("air");
    LumpedBeam lumped = lumped_params(beam);
    double q = q_in > 0.0 ? q_in : squeeze_film_q(beam, air);
    ResonatorDrive drive;
    drive.bias_voltage = bias;
    drive.drive_amplitude = drive_amp;
    drive.electrode_area = electrode_area > 0.0 ? electrode_area : beam.length / 3.0 * beam.width;
    print_warnings(drive.warnings());

    double f1 = lumped.omega1() / (2.0 * std::acos(-1.0));
    if (f_start <= 0.0) f_start = f1 / 10.0;
    if (f_stop <= 0.0) f_stop = f1 * 10.0;
    if (ppd <= 0) ppd = std::max(200, static_cast<int>(std::ceil(40.0 * q)));
    auto curve = resonator_bandpass_curve(beam, lumped, q, drive, log_grid(f_start, f_stop, ppd),
                                          normalize);
    auto s = half_power_analysis(curve);
    write_output(common, [&](std::ostream& o) { curve.write_csv(o); },
                 [&] {
                     auto j = curve.to_json();
                     j["analysis"] = s.to_json();
                     return j;
                 });
    auto at_peak = resonator_response(beam, lumped, q, drive, s.f_center);
    std::cout << "f_peak_Hz=" << fmt(s.f_center) << " (" << units::format_eng(s.f_center, "Hz")
              << ") q_extracted=" << fmt(s.q) << " q_mechanical=" << fmt(q)
              << " i_peak_A=" << fmt(at_peak.output_current) << " C_fix_F=" << fmt(at_peak.c_fix)
              << '\n';
    return 0;
}

// ----------------------------------------------------------------- measure

int run_measure_fit_parasitic(CommonOptions& common, ActuatorOptions& act,
                              const std::string& measured_path, int steps) {
    common.load();
    MeasuredCurve measured = load_curve(measured_path, CurveKind::cv);
    const Material& mat = common.registry.material("polysilicon");
    double k = suspension_stiffness(act.actuator, act.spring_model(), mat);
    CVCurve model = cv_curve(act.actuator, k, measured.x.front(),
                             measured.x.back() * (1.0 + 1e-9), steps);
    double c_par = extract_parasitic(measured, model);
    std::cout << "C_parasitic_F=" << fmt(c_par) << " (" << units::format_eng(c_par, "F") << ")"
              << " model_C0_F=" << fmt(model.points.front().capacitance)
              << " points_used=" << measured.x.size() << '\n';
    return 0;
}

int run_measure_find_peak(CommonOptions& common, const std::string& spectrum_path) {
    common.load();
    MeasuredCurve spectrum = load_curve(spectrum_path, CurveKind::spectrum);
    ResonancePeak peak = find_resonance_peak(spectrum);
    std::cout << "f_peak_Hz=" << fmt(peak.frequency) << " ("
              << units::format_eng(peak.frequency, "Hz") << ") amplitude=" << fmt(peak.amplitude)
              << " q=" << (peak.q ? fmt(*peak.q) : std::string("n/a")) << '\n';
    return 0;
}

// ----------------------------------------------------------------- compare

int run_compare(CommonOptions& common, ActuatorOptions& act, double f0, double q_target,
                double thickness, double gap, double sheet_resistance, double segment_length,
                double segment_width, double bias, double drive_amp) {
    common.load();
    const Material& mat = common.registry.material("polysilicon");
    const Ambient& air = common.registry.ambient("air");

    DesignSpec rc_spec{f0, 0.0, Topology::rc};
    auto rc_full = synthesize_design(rc_spec, act.actuator, act.spring_model(), thickness, gap, mat,
                                     air, sheet_resistance, segment_length, segment_width, bias,
                                     drive_amp);
    DesignSpec res_spec{f0, q_target, Topology::resonator};
    auto res_full = synthesize_design(res_spec, act.actuator, act.spring_model(), thickness, gap,
                                      mat, air, sheet_resistance, segment_length, segment_width,
                                      bias, drive_amp);

    ComparisonReport report = compare(*rc_full.rc, *res_full.resonator);
    write_output(common, [&](std::ostream& o) { report.write_table(o); },
                 [&] { return report.to_json(); });
    if (common.out_path.empty()) report.write_table(std::cout);
    std::cout << "q_ratio=" << fmt(report.q_ratio) << " area_ratio=" << fmt(report.area_ratio)
              << " rc_R_ohm=" << fmt(rc_full.rc->resistance)
              << " resonator_L_m=" << fmt(res_full.resonator->beam.length)
              << " resonator_b_m=" << fmt(res_full.resonator->beam.width) << '\n';
    return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    long steps = 0;
};

SweepAxis parse_axis(const std::string& text) {
    // name=start:stop:steps
    size_t eq = text.find('=');
    size_t c1 = text.find(':', eq == std::string::npos ? 0 : eq);
    size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos)
        throw Error("usage", "bad axis '" + text + "', expected name=start:stop:steps");
    SweepAxis ax;
    ax.name = text.substr(0, eq);
    try {
        ax.start = std::stod(text.substr(eq + 1, c1 - eq - 1));
        ax.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        ax.steps = std::stol(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw Error("usage", "bad axis '" + text + "', expected name=start:stop:steps");
    }
    if (ax.name.empty() || ax.steps < 1)
        throw Error("usage", "axis '" + text + "' is empty or has no steps");
    if (ax.steps > 1 && !(ax.stop > ax.start))
        throw Error("usage", "axis '" + text + "' must have stop > start");
    return ax;
}

double axis_value(const SweepAxis& ax, long i) {
    if (ax.steps == 1) return ax.start;
    return ax.start + (ax.stop - ax.start) * static_cast<double>(i) / (ax.steps - 1);
}

int run_sweep(CommonOptions& common, ActuatorOptions& act, BeamOptions& beam_opts,
              const std::string& op, const std::vector<std::string>& axis_specs, double resistance,
              double capacitance, double frequency) {
    common.load();
    if (axis_specs.empty()) throw Error("usage", "sweep needs at least one --axis");
    if (axis_specs.size() > 3) throw Error("usage", "sweep supports at most 3 axes");
    std::vector<SweepAxis> axes;
    long total = 1;
    for (const auto& s : axis_specs) {
        axes.push_back(parse_axis(s));
        total *= axes.back().steps;
    }
    if (total > 1000000) throw Error("too_many_points", "sweep exceeds 1e6 points");

    struct OpSpec {
        std::vector<std::string> allowed_axes;
        std::string result_header;
    };
    const std::map<std::string, OpSpec> ops = {
        {"beam-f1", {{"length", "width", "thickness"}, "f1_Hz"}},
        {"damping-q", {{"length", "width", "thickness", "gap", "frequency"}, "Q"}},
        {"varactor-c", {{"voltage"}, "capacitance_F,pulled_in"}},
        {"rc-f0", {{"resistance", "capacitance"}, "f0_Hz"}},
    };
    auto op_it = ops.find(op);
    if (op_it == ops.end()) throw Error("usage", "unknown sweep op '" + op + "'");
    for (const auto& ax : axes) {
        const auto& allowed = op_it->second.allowed_axes;
        if (std::find(allowed.begin(), allowed.end(), ax.name) == allowed.end())
            throw Error("usage", "axis '" + ax.name + "' not supported by op '" + op + "'");
    }

    const Ambient& air = common.registry.ambient("air");
    double k_varactor = 0.0;
    if (op == "varactor-c")
        k_varactor = suspension_stiffness(act.actuator, act.spring_model(),
                                          common.registry.material("polysilicon"));

    std::ostringstream rows;
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto& ax : axes) rows << ax.name << ',';
    rows << op_it->second.result_header << '\n';

    std::vector<long> idx(axes.size(), 0);
    for (long row = 0; row < total; ++row) {
        long rem = row;
        for (size_t a = axes.size(); a-- > 0;) {
            idx[a] = rem % axes[a].steps;
            rem /= axes[a].steps;
        }
        std::map<std::string, double> v;
        nlohmann::json jrow;
        for (size_t a = 0; a < axes.size(); ++a) {
            double value = axis_value(axes[a], idx[a]);
            v[axes[a].name] = value;
            jrow[axes[a].name] = value;
            rows << units::format(value) << ',';
        }

        if (op == "beam-f1") {
            CantileverBeam beam = beam_opts.beam(common.registry);
            if (v.count("length")) beam.length = v["length"];
            if (v.count("width")) beam.width = v["width"];
            if (v.count("thickness")) beam.thickness = v["thickness"];
            double f1 = natural_frequency(beam, 1);
            rows << units::format(f1);
            jrow["f1_Hz"] = f1;
        } else if (op == "damping-q") {
            CantileverBeam beam = beam_opts.beam(common.registry);
            if (v.count("length")) beam.length = v["length"];
            if (v.count("width")) beam.width = v["width"];
            if (v.count("thickness")) beam.thickness = v["thickness"];
            if (v.count("gap")) beam.gap = v["gap"];
            std::optional<double> f;
            if (v.count("frequency")) f = v["frequency"];
            else if (frequency > 0.0) f = frequency;
            double q = squeeze_film_q(beam, air, f);
            rows << units::format(q);
            jrow["Q"] = q;
        } else if (op == "varactor-c") {
            auto gap = equilibrium_gap(act.actuator, k_varactor, v["voltage"]);
            if (gap) {
                double c = overlap_capacitance(act.actuator, *gap);
                rows << units::format(c) << ",0";
                jrow["capacitance_F"] = c;
                jrow["pulled_in"] = false;
            } else {
                rows << ",1";
                jrow["capacitance_F"] = nullptr;
                jrow["pulled_in"] = true;
            }
        } else if (op == "rc-f0") {
            RCFilter filt{v.count("resistance") ? v["resistance"] : resistance,
                          v.count("capacitance") ? v["capacitance"] : capacitance};
            double f0 = rc_center_frequency(filt);
            rows << units::format(f0);
            jrow["f0_Hz"] = f0;
        }
        rows << '\n';
        jrows.push_back(std::move(jrow));
    }

    std::string payload = common.format == "json"
                              ? nlohmann::json{{"op", op}, {"rows", jrows}}.dump(2) + "\n"
                              : rows.str();
    if (!common.out_path.empty()) {
        std::ofstream out(common.out_path);
        if (!out) throw Error("io", "cannot open output file '" + common.out_path + "'");
        out << payload;
    } else {
        std::cout << payload;
    }
    std::cout << "rows=" << total << " op=" << op << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MEMS band-pass filter design toolkit: varactor/RC and cantilever resonator"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    CommonOptions common;

    // varactor
    auto* varactor = sub(&app, "varactor", "parallel-plate varactor analysis");
    varactor->require_subcommand(1);
    ActuatorOptions var_act;
    double cv_vstart = 0.0, cv_vstop = 10.0;
    int cv_steps = 101;
    auto* var_cv = sub(varactor, "cv", "C-V sweep (truncates at pull-in)");
    add_actuator(var_cv, var_act);
    add_common(var_cv, common);
    var_cv->add_option("--vstart", cv_vstart, "V");
    var_cv->add_option("--vstop", cv_vstop, "V");
    var_cv->add_option("--steps", cv_steps, "number of voltage samples");

    std::string pullin_method = "analytic";
    auto* var_pullin = sub(varactor, "pullin", "pull-in voltage");
    add_actuator(var_pullin, var_act);
    add_common(var_pullin, common, false);
    var_pullin->add_option("--method", pullin_method, "analytic | continuation")
        ->check(CLI::IsMember({"analytic", "continuation"}));

    // beam
    auto* beam = sub(&app, "beam", "cantilever modal analysis and synthesis");
    beam->require_subcommand(1);
    BeamOptions beam_opts;
    int n_modes = 3, shape_samples = 101, fd_nodes = 0, shape_mode = 1;
    auto* beam_modes = sub(beam, "modes", "natural frequencies and mode shape export");
    add_beam(beam_modes, beam_opts);
    add_common(beam_modes, common);
    beam_modes->add_option("--modes", n_modes, "number of modes to print");
    beam_modes->add_option("--samples", shape_samples, "mode-shape samples for --out");
    beam_modes->add_option("--shape-mode", shape_mode, "which mode shape to export");
    beam_modes->add_option("--fd-nodes", fd_nodes,
                           "cross-check with the finite-difference eigensolver (e.g. 400)");

    double synth_f0 = 455e3, synth_h = 2e-6;
    std::string synth_material = "polysilicon";
    auto* beam_synth = sub(beam, "synth", "beam length for a target mode-1 frequency");
    add_common(beam_synth, common, false);
    beam_synth->add_option("--f0", synth_f0, "target frequency, Hz")->required();
    beam_synth->add_option("--h", synth_h, "beam thickness, m")->required();
    beam_synth->add_option("--material", synth_material);

    // damping
    auto* damping = sub(&app, "damping", "squeeze-film damping");
    damping->require_subcommand(1);
    BeamOptions damp_beam;
    double damp_f = 0.0;
    auto* damping_q = sub(damping, "q", "squeeze-film quality factor");
    add_beam(damping_q, damp_beam);
    add_common(damping_q, common, false);
    damping_q->add_option("--f", damp_f, "frequency override, Hz (default: beam mode 1)");

    double sw_q = 50.0, sw_h = 2e-6, sw_gap = 2e-6, sw_f = 455e3;
    std::string sw_material = "polysilicon";
    auto* damping_sw = sub(damping, "synth-width", "beam width for a target Q");
    add_common(damping_sw, common, false);
    damping_sw->add_option("--Q", sw_q, "target quality factor")->required();
    damping_sw->add_option("--h", sw_h, "beam thickness, m");
    damping_sw->add_option("--gap", sw_gap, "air gap, m");
    damping_sw->add_option("--f", sw_f, "operating frequency, Hz")->required();
    damping_sw->add_option("--material", sw_material);

    // filter
    auto* filter = sub(&app, "filter", "transfer-function analysis");
    filter->require_subcommand(1);
    double rc_r = 903e3, rc_c = 387.3e-15, rc_fstart = 0.0, rc_fstop = 0.0;
    int rc_ppd = 200;
    bool rc_analyze = false;
    auto* filter_rc = sub(filter, "rc", "RC band-pass response");
    add_common(filter_rc, common);
    filter_rc->add_option("--R", rc_r, "resistance, ohm")->required();
    filter_rc->add_option("--C", rc_c, "capacitance, F")->required();
    filter_rc->add_flag("--analyze", rc_analyze, "extract f_center, cutoffs and Q from the curve");
    filter_rc->add_option("--fstart", rc_fstart, "Hz (default f0/100)");
    filter_rc->add_option("--fstop", rc_fstop, "Hz (default f0*100)");
    filter_rc->add_option("--ppd", rc_ppd, "grid points per decade");

    double sr_f0 = 455e3, sr_c = 387.3e-15;
    auto* filter_sr = sub(filter, "synth-r", "resistance for a target centre frequency");
    add_common(filter_sr, common, false);
    filter_sr->add_option("--f0", sr_f0, "Hz")->required();
    filter_sr->add_option("--C", sr_c, "F")->required();

    double serp_len = 300e-6, serp_w = 1e-6, serp_sheet = 30.0;
    int serp_n = 100, serp_corners = -1;
    auto* filter_serp = sub(filter, "serpentine", "serpentine resistor value");
    add_common(filter_serp, common, false);
    filter_serp->add_option("--segment-length", serp_len, "m");
    filter_serp->add_option("--width", serp_w, "m");
    filter_serp->add_option("--segments", serp_n);
    filter_serp->add_option("--corners", serp_corners, "default: segments - 1");
    filter_serp->add_option("--sheet-resistance", serp_sheet, "ohm/sq");

    BeamOptions res_beam;
    double res_q = 0.0, res_bias = 10.0, res_drive = 0.1, res_ae = 0.0;
    double res_fstart = 0.0, res_fstop = 0.0;
    int res_ppd = 0;
    bool res_norm = false;
    auto* filter_res = sub(filter, "resonator", "electromechanical band-pass response");
    add_beam(filter_res, res_beam);
    add_common(filter_res, common);
    filter_res->add_option("--Q", res_q, "mechanical Q (default: squeeze-film value)");
    filter_res->add_option("--Vp", res_bias, "dc bias, V");
    filter_res->add_option("--vi", res_drive, "ac drive amplitude, V");
    filter_res->add_option("--Ae", res_ae, "electrode overlap area, m^2 (default L/3 * b)");
    filter_res->add_option("--fstart", res_fstart, "Hz");
    filter_res->add_option("--fstop", res_fstop, "Hz");
    filter_res->add_option("--ppd", res_ppd, "grid points per decade (default scales with Q)");
    filter_res->add_flag("--normalize", res_norm, "normalise the curve to unit peak");

    // measure
    auto* measure = sub(&app, "measure", "measured-data import and validation");
    measure->require_subcommand(1);
    ActuatorOptions meas_act;
    std::string meas_cv_path;
    int meas_steps = 401;
    auto* meas_fit = sub(measure, "fit-parasitic",
                                             "constant parallel parasitic against the model C-V");
    add_actuator(meas_fit, meas_act);
    add_common(meas_fit, common, false);
    meas_fit->add_option("--measured", meas_cv_path, "measured C-V csv")->required();
    meas_fit->add_option("--model-steps", meas_steps, "model curve samples");

    std::string meas_spec_path;
    auto* meas_peak = sub(measure, "find-peak", "resonance peak of a spectrum");
    add_common(meas_peak, common, false);
    meas_peak->add_option("--spectrum", meas_spec_path, "spectrum csv")->required();

    // compare
    ActuatorOptions cmp_act;
    double cmp_f0 = 455e3, cmp_q = 50.0, cmp_h = 2e-6, cmp_gap = 2e-6;
    double cmp_sheet = 30.0, cmp_seg_len = 300e-6, cmp_seg_w = 1e-6;
    double cmp_bias = 10.0, cmp_drive = 0.1;
    auto* cmp = sub(&app, "compare", "side-by-side design synthesis and report");
    add_actuator(cmp, cmp_act);
    add_common(cmp, common);
    cmp->add_option("--f0", cmp_f0, "target centre frequency, Hz");
    cmp->add_option("--Q", cmp_q, "resonator Q target");
    cmp->add_option("--h", cmp_h, "resonator thickness, m");
    cmp->add_option("--beam-gap", cmp_gap, "resonator air gap, m");
    cmp->add_option("--sheet-resistance", cmp_sheet, "ohm/sq");
    cmp->add_option("--segment-length", cmp_seg_len, "m");
    cmp->add_option("--segment-width", cmp_seg_w, "m");
    cmp->add_option("--Vp", cmp_bias, "V");
    cmp->add_option("--vi", cmp_drive, "V");

    // sweep
    ActuatorOptions sweep_act;
    BeamOptions sweep_beam;
    std::string sweep_op;
    std::vector<std::string> sweep_axes;
    double sweep_r = 903e3, sweep_c = 387.3e-15, sweep_f = 0.0;
    auto* sweep = sub(&app, "sweep", "cross-product evaluation of one operation");
    add_actuator(sweep, sweep_act);
    add_beam(sweep, sweep_beam);
    add_common(sweep, common);
    sweep->add_option("--op", sweep_op, "beam-f1 | damping-q | varactor-c | rc-f0")->required();
    sweep->add_option("--axis", sweep_axes, "axis spec name=start:stop:steps (repeatable, max 3)");
    sweep->add_option("--R", sweep_r, "base resistance for rc-f0");
    sweep->add_option("--C", sweep_c, "base capacitance for rc-f0");
    sweep->add_option("--f", sweep_f, "frequency override for damping-q");

    try {
        app.parse(argc, argv);

        if (var_cv->parsed()) return run_varactor_cv(common, var_act, cv_vstart, cv_vstop, cv_steps);
        if (var_pullin->parsed()) return run_varactor_pullin(common, var_act, pullin_method);
        if (beam_modes->parsed())
            return run_beam_modes(common, beam_opts, n_modes, shape_samples, fd_nodes, shape_mode);
        if (beam_synth->parsed()) return run_beam_synth(common, synth_f0, synth_h, synth_material);
        if (damping_q->parsed()) return run_damping_q(common, damp_beam, damp_f);
        if (damping_sw->parsed())
            return run_damping_synth_width(common, sw_q, sw_h, sw_gap, sw_f, sw_material);
        if (filter_rc->parsed())
            return run_filter_rc(common, rc_r, rc_c, rc_analyze, rc_fstart, rc_fstop, rc_ppd);
        if (filter_sr->parsed()) return run_filter_synth_r(common, sr_f0, sr_c);
        if (filter_serp->parsed())
            return run_filter_serpentine(common, serp_len, serp_w, serp_n,
                                         serp_corners < 0 ? serp_n - 1 : serp_corners, serp_sheet);
        if (filter_res->parsed())
            return run_filter_resonator(common, res_beam, res_q, res_bias, res_drive, res_ae,
                                        res_fstart, res_fstop, res_ppd, res_norm);
        if (meas_fit->parsed())
            return run_measure_fit_parasitic(common, meas_act, meas_cv_path, meas_steps);
        if (meas_peak->parsed()) return run_measure_find_peak(common, meas_spec_path);
        if (cmp->parsed())
            return run_compare(common, cmp_act, cmp_f0, cmp_q, cmp_h, cmp_gap, cmp_sheet,
                               cmp_seg_len, cmp_seg_w, cmp_bias, cmp_drive);
        if (sweep->parsed())
            return run_sweep(common, sweep_act, sweep_beam, sweep_op, sweep_axes, sweep_r, sweep_c,
                             sweep_f);
        std::cerr << "error_code=usage no subcommand given\n";
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error_code=usage " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error_code=" << e.code() << ' ' << e.what() << '\n';
        bool usage = e.code() == "usage" || e.code() == "bad_input" ||
                     e.code() == "too_many_points";
        return usage ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error_code=internal " << e.what() << '\n';
        return 2;
    }
}
