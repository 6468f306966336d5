#pragma once

#include "memsbpf/materials.hpp"

#include <iosfwd>
#include <vector>

#include <json.hpp>

namespace memsbpf {

// Clamped-free rectangular cantilever. `gap` is the beam-to-electrode air
// gap used by the squeeze-film and transduction models.
struct CantileverBeam {
    double length = 0.0;    // m
    double width = 0.0;     // m
    double thickness = 0.0; // m
    double gap = 0.0;       // m
    Material material;

    double bending_stiffness() const; // EI, I = w h^3 / 12
    double area() const;              // cross-section, w h

    void validate() const;                    // hard invariants
    std::vector<std::string> warnings() const; // slender-beam check (L/h < 10)
};

struct ModalResult {
    int mode_index = 0;       // n >= 1
    double frequency = 0.0;   // Hz
    double mode_constant = 0.0; // k_n L, dimensionless
    std::vector<double> x;    // sample positions, 0..L
    std::vector<double> phi;  // mode shape, unit tip deflection

    void write_csv(std::ostream& out) const; // header: x_m,phi
    nlohmann::json to_json() const;
};

// Single-degree-of-freedom equivalent of mode 1.
struct LumpedBeam {
    double k_eff = 0.0; // N/m, tip stiffness 3EI/L^3
    double m_eff = 0.0; // kg, 0.2427 rho b h L

    double omega1() const; // sqrt(k_eff / m_eff)
};

// First n_max roots of cos(x) cosh(x) = -1 (clamped-free frequency
// constants: 1.8751, 4.6941, 7.8548, ...), Newton-refined to 1e-12.
std::vector<double> mode_constants(int n_max);

// Mode-n natural frequency, omega_n = sqrt(k_n^4 / 12) (h / L^2) sqrt(E / rho).
double natural_frequency(const CantileverBeam& beam, int n);

// Sampled clamped-free mode shape, normalised to phi(L) = 1.
ModalResult mode_shape(const CantileverBeam& beam, int n, int samples);

// Independent finite-difference check of the analytic frequencies: lowest
// three modes of the generalized eigenproblem from a 2nd-order uniform-grid
// discretisation of the beam equation with clamped-free boundaries.
std::vector<double> fd_modal_frequencies(const CantileverBeam& beam, int nodes);

// Closed-form inversion of the mode-1 frequency for the beam length.
double synthesize_length(double f_target, double thickness, const Material& material);

LumpedBeam lumped_params(const CantileverBeam& beam);

} // namespace memsbpf
