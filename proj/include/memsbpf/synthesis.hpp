#pragma once

#include "memsbpf/beam.hpp"
#include "memsbpf/damping.hpp"
#include "memsbpf/electrostatics.hpp"
#include "memsbpf/filters.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace memsbpf {

enum class Topology { rc, resonator };

const char* to_string(Topology t);

struct DesignSpec {
    double f0_target = 0.0; // Hz
    double q_target = 0.0;  // resonator path only
    Topology topology = Topology::rc;

    void validate() const;
};

// Physical layout of the film resistor that realises the synthesized R.
struct SerpentineLayout {
    double segment_length = 0.0; // m
    double width = 0.0;          // m
    double spacing = 0.0;        // m, between adjacent segments
    int n_segments = 0;
    int n_corners = 0;
    double sheet_resistance = 0.0; // ohm/sq

    double resistance() const;
    double bounding_area() const; // enclosing rectangle
};

struct RcDesign {
    PlateActuator actuator;
    SpringModel spring = SpringModel::fixed_guided;
    double stiffness = 0.0;       // N/m
    double c0 = 0.0;              // F, capacitance at 0 V
    double resistance = 0.0;      // ohm, exact 1/(2 pi f0 C0)
    double pull_in = 0.0;         // V, continuation value
    SerpentineLayout layout;      // nearest realisable resistor
};

struct ResonatorDesign {
    CantileverBeam beam;
    LumpedBeam lumped;
    double q = 0.0;
    ResonatorDrive drive;
};

struct FullDesign {
    DesignSpec spec;
    std::optional<RcDesign> rc;
    std::optional<ResonatorDesign> resonator;
};

// Design synthesis for one topology. The RC path sizes the resistor against
// the varactor's zero-bias capacitance; the resonator path inverts the
// frequency and Q formulas for length and width, then extracts the lumped
// equivalent.
FullDesign synthesize_design(const DesignSpec& spec, const PlateActuator& actuator,
                             SpringModel spring, double thickness, double gap,
                             const Material& material, const Ambient& ambient,
                             double sheet_resistance, double serpentine_segment_length,
                             double serpentine_width, double bias_voltage,
                             double drive_amplitude);

struct Tunability {
    double dc_over_c = 0.0;   // C(V_pi-)/C(0) - 1
    double df0_over_f0 = 0.0; // 1/(1 + dC/C) - 1

    nlohmann::json to_json() const;
};

// Capacitance and centre-frequency tuning range of a C-V curve that reaches
// pull-in ("no_pull_in_in_range" otherwise). The f0 shift follows exactly
// from f0 = 1/(2 pi R C); (1 + dC/C)(1 + df0/f0) == 1 identically.
Tunability tunability(const CVCurve& cv);

struct FootprintEstimate {
    double area = 0.0; // m^2
    std::string method;
};

FootprintEstimate footprint_area(const RcDesign& d);
FootprintEstimate footprint_area(const ResonatorDesign& d);

struct TopologyReport {
    std::string topology;
    double f0 = 0.0;
    double q = 0.0;
    FootprintEstimate footprint;
    std::optional<Tunability> tunability; // absent entries are reported "n/a"
    std::vector<std::pair<std::string, double>> key_dimensions;

    nlohmann::json to_json() const;
};

struct ComparisonReport {
    TopologyReport rc;
    TopologyReport resonator;
    double q_ratio = 0.0;    // Q_resonator / Q_rc
    double area_ratio = 0.0; // area_rc / area_resonator
    std::vector<std::string> findings;

    nlohmann::json to_json() const;
    static ComparisonReport from_json(const nlohmann::json& j);
    void write_table(std::ostream& out) const;
};

// Side-by-side figure-of-merit report (Q, tunability, area) for the two
// analysed designs.
ComparisonReport compare(const RcDesign& rc, const ResonatorDesign& resonator);

} // namespace memsbpf
