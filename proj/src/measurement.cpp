#include "memsbpf/measurement.hpp"

#include "memsbpf/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace memsbpf {

void MeasuredCurve::validate() const {
    if (x.size() != y.size()) throw Error("parse", "x/y length mismatch");
    if (x.size() < 3) throw Error("parse", "measured curve needs at least 3 points");
    for (size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw Error("non_monotonic", "x values must be strictly increasing (index " +
                                             std::to_string(i) + ")");
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_field(const std::string& text, const std::string& origin, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || !trim(end).empty())
        throw Error("parse", origin + ":" + std::to_string(line) + ": bad number '" + text + "'");
    return v;
}

} // namespace

MeasuredCurve parse_curve(std::istream& in, CurveKind kind, const std::string& origin) {
    MeasuredCurve curve;
    curve.kind = kind;
    curve.label = origin;

    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            size_t comma = s.find(',');
            if (comma == std::string::npos)
                throw Error("parse", origin + ":" + std::to_string(lineno) + ": missing CSV header");
            std::string cx = trim(s.substr(0, comma));
            std::string cy = trim(s.substr(comma + 1));
            if (kind == CurveKind::cv) {
                if (cx != "voltage_V" || cy != "capacitance_F")
                    throw Error("unit_mismatch",
                                origin + ":" + std::to_string(lineno) +
                                    ": expected header voltage_V,capacitance_F, got '" + s + "'");
                curve.x_unit = "V";
                curve.y_unit = "F";
            } else {
                if (cx != "frequency_Hz" || cy.rfind("amplitude", 0) != 0)
                    throw Error("unit_mismatch",
                                origin + ":" + std::to_string(lineno) +
                                    ": expected header frequency_Hz,amplitude[_unit], got '" + s + "'");
                curve.x_unit = "Hz";
                curve.y_unit = cy.size() > 10 && cy[9] == '_' ? cy.substr(10) : "arb";
            }
            continue;
        }
        size_t comma = s.find(',');
        if (comma == std::string::npos)
            throw Error("parse", origin + ":" + std::to_string(lineno) + ": expected two columns");
        double xv = parse_field(trim(s.substr(0, comma)), origin, lineno);
        double yv = parse_field(trim(s.substr(comma + 1)), origin, lineno);
        if (!curve.x.empty() && !(xv > curve.x.back()))
            throw Error("non_monotonic", origin + ":" + std::to_string(lineno) +
                                             ": x values must be strictly increasing");
        curve.x.push_back(xv);
        curve.y.push_back(yv);
    }
    if (!header_seen) throw Error("parse", origin + ": empty file");
    curve.validate();
    return curve;
}

MeasuredCurve load_curve(const std::string& path, CurveKind kind) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open '" + path + "'");
    return parse_curve(in, kind, path);
}

namespace {

double interpolate(const std::vector<CVPoint>& pts, double v) {
    auto it = std::lower_bound(pts.begin(), pts.end(), v,
                               [](const CVPoint& p, double value) { return p.voltage < value; });
    if (it == pts.begin()) return it->capacitance;
    if (it == pts.end()) return (it - 1)->capacitance;
    const CVPoint& hi = *it;
    const CVPoint& lo = *(it - 1);
    double t = (v - lo.voltage) / (hi.voltage - lo.voltage);
    return lo.capacitance + t * (hi.capacitance - lo.capacitance);
}

} // namespace

double extract_parasitic(const MeasuredCurve& measured, const CVCurve& model) {
    measured.validate();
    if (measured.kind != CurveKind::cv)
        throw Error("unit_mismatch", "parasitic extraction needs a C-V curve");
    if (model.points.size() < 2) throw Error("bad_input", "model curve needs at least 2 points");

    double lo = std::max(measured.x.front(), model.points.front().voltage);
    double hi = std::min(measured.x.back(), model.points.back().voltage);
    if (!(lo <= hi))
        throw Error("no_overlap", "measured and model voltage ranges do not overlap");

    // Least-squares constant offset == mean residual over the common range.
    double sum = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < measured.x.size(); ++i) {
        double v = measured.x[i];
        if (v < lo || v > hi) continue;
        sum += measured.y[i] - interpolate(model.points, v);
        ++count;
    }
    if (count == 0)
        throw Error("no_overlap", "no measured samples inside the common voltage range");
    return sum / static_cast<double>(count);
}

ResonancePeak find_resonance_peak(const MeasuredCurve& spectrum) {
    spectrum.validate();
    const auto& x = spectrum.x;
    const auto& y = spectrum.y;
    size_t imax = 0;
    for (size_t i = 1; i < y.size(); ++i)
        if (y[i] > y[imax]) imax = i;
    if (imax == 0 || imax + 1 == y.size())
        throw Error("no_peak", "spectrum has no interior maximum");

    // Parabola through the three samples around the maximum.
    double x0 = x[imax - 1], x1 = x[imax], x2 = x[imax + 1];
    double y0 = y[imax - 1], y1 = y[imax], y2 = y[imax + 1];
    double d01 = (y1 - y0) / (x1 - x0);
    double d12 = (y2 - y1) / (x2 - x1);
    double a = (d12 - d01) / (x2 - x0);

    ResonancePeak peak;
    if (a < 0.0) {
        double b = d01 + a * (x1 - x0);
        peak.frequency = x1 - b / (2.0 * a);
        peak.amplitude = y1 - b * b / (4.0 * a);
    } else {
        peak.frequency = x1;
        peak.amplitude = y1;
    }

    // Half-power width when both crossings lie inside the sampled range.
    double target = peak.amplitude / std::sqrt(2.0);
    auto cross = [&](bool upper) -> std::optional<double> {
        size_t i = imax;
        while (true) {
            if (upper) {
                if (i + 1 == y.size()) return std::nullopt;
                ++i;
            } else {
                if (i == 0) return std::nullopt;
                --i;
            }
            if (y[i] < target) break;
        }
        size_t prev = upper ? i - 1 : i + 1;
        double t = (target - y[prev]) / (y[i] - y[prev]);
        return x[prev] + t * (x[i] - x[prev]);
    };
    auto flo = cross(false);
    auto fhi = cross(true);
    if (flo && fhi && *fhi > *flo) peak.q = peak.frequency / (*fhi - *flo);
    return peak;
}

} // namespace memsbpf
