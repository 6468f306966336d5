#include "memsbpf/filters.hpp"

#include "memsbpf/error.hpp"
#include "memsbpf/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace memsbpf {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
} // namespace

void RCFilter::validate() const {
    if (!(resistance > 0.0)) throw Error("bad_input", "resistance must be > 0");
    if (!(capacitance > 0.0)) throw Error("bad_input", "capacitance must be > 0");
}

void ResponseCurve::write_csv(std::ostream& out) const {
    out << "frequency_Hz,magnitude,phase_rad\n";
    for (const auto& p : points)
        out << units::format(p.frequency) << ',' << units::format(p.magnitude) << ','
            << units::format(p.phase) << '\n';
}

nlohmann::json ResponseCurve::to_json() const {
    nlohmann::json j;
    j["source"] = source;
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& p : points)
        pts.push_back({{"frequency_Hz", p.frequency}, {"magnitude", p.magnitude}, {"phase_rad", p.phase}});
    return j;
}

nlohmann::json BandpassSummary::to_json() const {
    return {{"f_low_Hz", f_low}, {"f_high_Hz", f_high}, {"f_center_Hz", f_center}, {"q", q}};
}

void ResonatorDrive::validate() const {
    if (bias_voltage < 0.0) throw Error("bad_input", "bias voltage must be >= 0");
    if (drive_amplitude < 0.0) throw Error("bad_input", "drive amplitude must be >= 0");
    if (!(electrode_area > 0.0)) throw Error("bad_input", "electrode area must be > 0");
}

std::vector<std::string> ResonatorDrive::warnings() const {
    std::vector<std::string> w;
    if (bias_voltage > 0.0 && drive_amplitude > 0.1 * bias_voltage)
        w.push_back("drive amplitude exceeds 10% of the dc bias; the small-signal "
                    "linearisation loses accuracy");
    return w;
}

std::complex<double> rc_transfer(const RCFilter& f, double frequency) {
    f.validate();
    if (!(frequency > 0.0)) throw Error("bad_input", "frequency must be > 0");
    std::complex<double> s(0.0, two_pi * frequency * f.resistance * f.capacitance); // s R C
    return s / (s * s + 3.0 * s + 1.0);
}

ResponsePoint rc_response(const RCFilter& f, double frequency) {
    auto h = rc_transfer(f, frequency);
    return {frequency, std::abs(h), std::arg(h)};
}

double rc_center_frequency(const RCFilter& f) {
    f.validate();
    return 1.0 / (two_pi * f.resistance * f.capacitance);
}

std::vector<double> log_grid(double f_start, double f_stop, int points_per_decade) {
    if (!(f_start > 0.0) || !(f_stop > f_start))
        throw Error("bad_input", "require 0 < f_start < f_stop");
    if (points_per_decade < 1) throw Error("bad_input", "points_per_decade must be >= 1");
    double decades = std::log10(f_stop / f_start);
    int n = static_cast<int>(std::ceil(decades * points_per_decade)) + 1;
    n = std::max(n, 2);
    std::vector<double> grid(n);
    double l0 = std::log10(f_start);
    double step = decades / (n - 1);
    for (int i = 0; i < n; ++i) grid[i] = std::pow(10.0, l0 + i * step);
    grid.front() = f_start;
    grid.back() = f_stop;
    return grid;
}

ResponseCurve rc_response_curve(const RCFilter& f, const std::vector<double>& grid) {
    ResponseCurve c;
    c.source = "rc R=" + units::format(f.resistance) + " C=" + units::format(f.capacitance);
    c.points.reserve(grid.size());
    for (double freq : grid) c.points.push_back(rc_response(f, freq));
    return c;
}

namespace {

// Vertex of the parabola through three (x, y) points; falls back to the
// middle point when the fit is not concave.
struct ParabolicPeak {
    double x;
    double y;
};

ParabolicPeak parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    double d01 = (y1 - y0) / (x1 - x0);
    double d12 = (y2 - y1) / (x2 - x1);
    double a = (d12 - d01) / (x2 - x0); // half the second derivative
    if (!(a < 0.0)) return {x1, y1};
    // vertex of y(x) = y1 + b (x - x1) + a (x - x1)^2
    double b = d01 + a * (x1 - x0);
    return {x1 - b / (2.0 * a), y1 - b * b / (4.0 * a)};
}

} // namespace

BandpassSummary half_power_analysis(const ResponseCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 3) throw Error("no_peak", "curve has fewer than 3 samples");
    size_t imax = 0;
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].magnitude > pts[imax].magnitude) imax = i;
    if (imax == 0 || imax + 1 == pts.size())
        throw Error("no_peak", "curve has no interior maximum");
    if (!(pts[imax].magnitude > 0.0)) throw Error("no_peak", "peak magnitude is not positive");

    auto lx = [&](size_t i) { return std::log(pts[i].frequency); };
    auto ly = [&](size_t i) { return std::log(pts[i].magnitude); };

    ParabolicPeak peak{lx(imax), ly(imax)};
    if (pts[imax - 1].magnitude > 0.0 && pts[imax + 1].magnitude > 0.0)
        peak = parabolic_vertex(lx(imax - 1), ly(imax - 1), lx(imax), ly(imax), lx(imax + 1),
                                ly(imax + 1));
    double f_center = std::exp(peak.x);
    double target = peak.y - 0.5 * std::log(2.0); // peak / sqrt(2) in log magnitude

    auto crossing = [&](bool upper) -> double {
        size_t i = imax;
        while (true) {
            if (upper) {
                if (i + 1 == pts.size())
                    throw Error("cutoff_out_of_range",
                                "upper half-power point lies beyond the sampled range");
                ++i;
            } else {
                if (i == 0)
                    throw Error("cutoff_out_of_range",
                                "lower half-power point lies below the sampled range");
                --i;
            }
            if (!(pts[i].magnitude > 0.0) || ly(i) < target) break;
        }
        size_t prev = upper ? i - 1 : i + 1;
        double ya = ly(prev), yb = pts[i].magnitude > 0.0 ? ly(i) : target - 50.0;
        double t = (target - ya) / (yb - ya);
        return std::exp(lx(prev) + t * (lx(i) - lx(prev)));
    };

    BandpassSummary s;
    s.f_center = f_center;
    s.f_low = crossing(false);
    s.f_high = crossing(true);
    s.q = s.f_center / (s.f_high - s.f_low);
    return s;
}

double synthesize_resistance(double f0, double capacitance) {
    if (!(f0 > 0.0)) throw Error("bad_input", "center frequency must be > 0");
    if (!(capacitance > 0.0)) throw Error("bad_input", "capacitance must be > 0");
    return 1.0 / (two_pi * f0 * capacitance);
}

double serpentine_resistance(double segment_length, double width, int n_segments, int n_corners,
                             double sheet_resistance) {
    if (!(segment_length > 0.0) || !(width > 0.0) || !(sheet_resistance > 0.0))
        throw Error("bad_input", "serpentine dimensions and sheet resistance must be > 0");
    if (n_segments < 1 || n_corners < 0)
        throw Error("bad_input", "need n_segments >= 1 and n_corners >= 0");
    return sheet_resistance * (n_segments * segment_length / width + 0.56 * n_corners);
}

ResonatorOperatingPoint resonator_response(const CantileverBeam& beam, const LumpedBeam& lumped,
                                           double q, const ResonatorDrive& drive, double frequency) {
    beam.validate();
    drive.validate();
    if (!(q > 0.0)) throw Error("bad_input", "Q must be > 0");
    if (!(frequency > 0.0)) throw Error("bad_input", "frequency must be > 0");

    const double y0 = beam.gap;
    const double omega = two_pi * frequency;
    const double omega1 = lumped.omega1();

    // Keep only the V_p * v_i cross term of the (V_p - v_i)^2 drive; the
    // static V_p^2 term shifts the operating point and is dropped.
    const double force = vacuum_permittivity * drive.electrode_area * drive.bias_voltage *
                         drive.drive_amplitude / (y0 * y0);
    const double d1 = omega1 * omega1 - omega * omega;
    const double d2 = omega1 * omega / q;
    const double displacement = (force / lumped.m_eff) / std::hypot(d1, d2);

    ResonatorOperatingPoint op;
    op.tip_displacement = displacement;
    op.c_fix = vacuum_permittivity * drive.electrode_area / y0;
    op.c_var = vacuum_permittivity * drive.electrode_area * displacement / (y0 * y0);
    op.output_current = drive.bias_voltage * op.c_var * omega;
    return op;
}

ResponseCurve resonator_bandpass_curve(const CantileverBeam& beam, const LumpedBeam& lumped,
                                       double q, const ResonatorDrive& drive,
                                       const std::vector<double>& grid, bool normalize) {
    if (grid.size() < 3) throw Error("bad_input", "frequency grid needs at least 3 points");
    double f1 = lumped.omega1() / two_pi;
    if (!(grid.front() <= f1 && f1 <= grid.back()))
        throw Error("grid_misses_peak", "frequency grid does not bracket the mode-1 resonance at " +
                                            units::format(f1, 6) + " Hz");

    ResponseCurve c;
    c.source = "resonator f1=" + units::format(f1, 6) + " Q=" + units::format(q, 6);
    c.points.reserve(grid.size());
    for (double f : grid) {
        auto op = resonator_response(beam, lumped, q, drive, f);
        c.points.push_back({f, op.output_current, 0.0});
    }
    if (normalize) {
        double peak = 0.0;
        for (const auto& p : c.points) peak = std::max(peak, p.magnitude);
        if (peak > 0.0)
            for (auto& p : c.points) p.magnitude /= peak;
    }
    return c;
}

} // namespace memsbpf
