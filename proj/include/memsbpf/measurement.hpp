#pragma once

#include "memsbpf/electrostatics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace memsbpf {

enum class CurveKind { cv, spectrum };

// An imported measured dataset: a C-V sweep or a vibration spectrum.
struct MeasuredCurve {
    CurveKind kind = CurveKind::cv;
    std::vector<double> x; // strictly increasing; V or Hz
    std::vector<double> y; // F or amplitude (unit recorded below)
    std::string label;
    std::string x_unit;
    std::string y_unit;

    void validate() const;
};

// CSV loader. Expected headers: `voltage_V,capacitance_F` for C-V,
// `frequency_Hz,amplitude[_<unit>]` for spectra. '#' lines are comments.
// Errors carry line numbers: "parse", "non_monotonic", "unit_mismatch".
MeasuredCurve load_curve(const std::string& path, CurveKind kind);
MeasuredCurve parse_curve(std::istream& in, CurveKind kind, const std::string& origin);

// Constant parallel parasitic capacitance: the least-squares offset between
// a measured C-V curve and a model curve over their common voltage range
// (model linearly interpolated at the measured voltages).
double extract_parasitic(const MeasuredCurve& measured, const CVCurve& model);

struct ResonancePeak {
    double frequency = 0.0;     // Hz, parabolic fit through the 3 samples at the max
    double amplitude = 0.0;     // fitted peak amplitude
    std::optional<double> q;    // half-power estimate; absent when a crossing
                                // falls outside the sampled range
};

ResonancePeak find_resonance_peak(const MeasuredCurve& spectrum);

} // namespace memsbpf
