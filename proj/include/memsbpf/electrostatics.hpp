#pragma once

#include "memsbpf/materials.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

namespace memsbpf {

enum class SpringModel { fixed_guided, cantilever };
enum class PullInMethod { analytic, continuation };

const char* to_string(SpringModel m);
const char* to_string(PullInMethod m);

// Electrostatically actuated parallel-plate varactor: a suspended proof mass
// over a fixed electrode, held by identical suspension beams, with release
// perforations in the proof mass. All dimensions in metres.
struct PlateActuator {
    double electrode_length = 0.0;
    double electrode_width = 0.0;
    double electrode_thickness = 0.0;
    double proof_mass_length = 0.0;
    double proof_mass_width = 0.0;
    double proof_mass_thickness = 0.0;
    double gap0 = 0.0;           // initial air gap
    double beam_length = 0.0;    // suspension beams
    double beam_width = 0.0;
    double beam_thickness = 0.0; // out-of-plane
    int beam_count = 0;
    double hole_side = 0.0;      // square perforations
    int hole_count = 0;
    double fringing_factor = 1.0; // >= 1; capacitance calibration scalar

    // PolyMUMPs quad-beam device: 320x220x0.5 um electrode, 340x240x2 um
    // proof mass, four 100x20x2 um beams, 100 4 um holes, 2 um gap.
    static PlateActuator table1();

    double overlap_area() const;   // min(electrode, proof mass) plate area
    double hole_area_total() const;
    double effective_area() const; // fringing_factor * (overlap - holes)

    void validate() const; // throws Error("bad_geometry")
};

struct CVPoint {
    double voltage = 0.0;     // V
    double capacitance = 0.0; // F
};

struct CVCurve {
    std::vector<CVPoint> points;              // voltages strictly increasing
    std::optional<double> pull_in_voltage;    // set when the sweep truncated

    void write_csv(std::ostream& out) const;  // header: voltage_V,capacitance_F
    nlohmann::json to_json() const;
};

// Parallel-plate capacitance at the given air gap.
double overlap_capacitance(const PlateActuator& a, double gap);

// Total suspension stiffness, beam_count x (12EI/L^3 fixed-guided or 3EI/L^3
// cantilever), I = w t^3 / 12 with t the out-of-plane thickness.
double suspension_stiffness(const PlateActuator& a, SpringModel model, const Material& material);

// Stable static gap under bias V, or nullopt once the plate has pulled in.
// Solves k x = eps0 A V^2 / (2 (g - x)^2) for the stable root x in [0, g/3].
std::optional<double> equilibrium_gap(const PlateActuator& a, double stiffness, double voltage);

// Pull-in voltage. `analytic` evaluates sqrt(8 k g^3 / (27 eps0 A));
// `continuation` bisects on the smallest V at which equilibrium_gap reports
// pull-in (resolution far below the 1 mV the result is quoted at).
double pull_in_voltage(const PlateActuator& a, double stiffness, PullInMethod method);

// C-V sweep over [v_start, v_stop] with `steps` samples. If pull-in occurs
// inside the range the curve is truncated there, pull_in_voltage is recorded
// and the limiting stable point (displacement g/3) is appended.
CVCurve cv_curve(const PlateActuator& a, double stiffness, double v_start, double v_stop, int steps);

} // namespace memsbpf
