#pragma once

#include "memsbpf/beam.hpp"

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace memsbpf {

// First-order RC band-pass cell, H(s) = sRC / (s^2 R^2 C^2 + 3 s R C + 1).
struct RCFilter {
    double resistance = 0.0;  // ohm
    double capacitance = 0.0; // F

    void validate() const;
};

struct ResponsePoint {
    double frequency = 0.0; // Hz
    double magnitude = 0.0; // dimensionless
    double phase = 0.0;     // rad
};

struct ResponseCurve {
    std::vector<ResponsePoint> points; // frequencies strictly increasing
    std::string source;

    void write_csv(std::ostream& out) const; // header: frequency_Hz,magnitude,phase_rad
    nlohmann::json to_json() const;
};

struct BandpassSummary {
    double f_low = 0.0;    // Hz, lower half-power cutoff
    double f_high = 0.0;   // Hz, upper half-power cutoff
    double f_center = 0.0; // Hz, peak
    double q = 0.0;        // f_center / (f_high - f_low)

    nlohmann::json to_json() const;
};

// Drive conditions of the electrostatically excited resonator: dc bias on
// the beam, small ac excitation on the input electrode.
struct ResonatorDrive {
    double bias_voltage = 0.0;    // V_p
    double drive_amplitude = 0.0; // v_i, should stay << V_p
    double electrode_area = 0.0;  // m^2, beam/electrode overlap
    double termination = 0.0;     // R_o, informational only

    void validate() const;
    std::vector<std::string> warnings() const; // v_i > 0.1 V_p
};

struct ResonatorOperatingPoint {
    double tip_displacement = 0.0; // m, amplitude
    double c_fix = 0.0;            // F, static electrode capacitance
    double c_var = 0.0;            // F, motional capacitance amplitude
    double output_current = 0.0;   // A, V_p C_var omega
};

std::complex<double> rc_transfer(const RCFilter& f, double frequency);

// (|H|, phase) at one frequency.
ResponsePoint rc_response(const RCFilter& f, double frequency);

double rc_center_frequency(const RCFilter& f); // 1 / (2 pi R C)

// Log-spaced frequency grid, `points_per_decade` samples per decade,
// endpoints included.
std::vector<double> log_grid(double f_start, double f_stop, int points_per_decade);

ResponseCurve rc_response_curve(const RCFilter& f, const std::vector<double>& grid);

// Peak and half-power cutoffs of a sampled band-pass curve. The peak is
// refined by parabolic interpolation in (log f, log |H|); cutoffs by
// log-log linear interpolation between samples. Errors: "no_peak" when the
// maximum is not interior, "cutoff_out_of_range" when a crossing falls
// outside the sampled range.
BandpassSummary half_power_analysis(const ResponseCurve& curve);

double synthesize_resistance(double f0, double capacitance); // R = 1/(2 pi f0 C)

// Serpentine thin-film resistor: square counting plus 0.56 squares per
// corner.
double serpentine_resistance(double segment_length, double width, int n_segments,
                             int n_corners, double sheet_resistance);

// Small-signal electromechanical response at one frequency: linearized
// drive force F = eps0 A V_p v_i / y0^2, second-order mechanical
// transmissibility, capacitance modulation and output motional current.
ResonatorOperatingPoint resonator_response(const CantileverBeam& beam, const LumpedBeam& lumped,
                                           double q, const ResonatorDrive& drive, double frequency);

// |i_out| over the supplied grid, optionally normalised to unit peak.
// The grid must bracket the mode-1 resonance ("grid_misses_peak").
ResponseCurve resonator_bandpass_curve(const CantileverBeam& beam, const LumpedBeam& lumped,
                                       double q, const ResonatorDrive& drive,
                                       const std::vector<double>& grid, bool normalize = false);

} // namespace memsbpf
