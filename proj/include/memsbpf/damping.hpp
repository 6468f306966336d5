#pragma once

#include "memsbpf/beam.hpp"
#include "memsbpf/materials.hpp"

#include <optional>

namespace memsbpf {

// Squeeze-film quality factor of a vibrating plate over a substrate,
// Q = 2 pi rho h y0^3 f / (mu b^2). Rigid-plate approximation; f defaults
// to the beam's own mode-1 frequency when not overridden.
double squeeze_film_q(const CantileverBeam& beam, const Ambient& ambient,
                      std::optional<double> frequency = std::nullopt);

// Inverse of squeeze_film_q for the beam width:
// b = sqrt(2 pi rho h y0^3 f / (mu Q)).
double synthesize_width(double q_target, double thickness, double gap, double frequency,
                        const Material& material, const Ambient& ambient);

} // namespace memsbpf
