#include "memsbpf/damping.hpp"

#include "memsbpf/error.hpp"

#include <cmath>
#include <numbers>

namespace memsbpf {

double squeeze_film_q(const CantileverBeam& beam, const Ambient& ambient,
                      std::optional<double> frequency) {
    beam.validate();
    ambient.validate();
    double f = frequency.value_or(natural_frequency(beam, 1));
    if (!(f > 0.0)) throw Error("bad_input", "frequency must be > 0");
    double y0 = beam.gap;
    return 2.0 * std::numbers::pi * beam.material.density * beam.thickness * y0 * y0 * y0 * f /
           (ambient.dynamic_viscosity * beam.width * beam.width);
}

double synthesize_width(double q_target, double thickness, double gap, double frequency,
                        const Material& material, const Ambient& ambient) {
    material.validate();
    ambient.validate();
    if (!(q_target > 0.0)) throw Error("bad_input", "Q target must be > 0");
    if (!(thickness > 0.0) || !(gap > 0.0)) throw Error("bad_input", "thickness and gap must be > 0");
    if (!(frequency > 0.0)) throw Error("bad_input", "frequency must be > 0");
    return std::sqrt(2.0 * std::numbers::pi * material.density * thickness * gap * gap * gap *
                     frequency / (ambient.dynamic_viscosity * q_target));
}

} // namespace memsbpf
