#include "memsbpf/beam.hpp"

#include "memsbpf/error.hpp"
#include "memsbpf/units.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <ostream>

namespace memsbpf {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
// Mode-1 equivalent mass fraction of a cantilever, 3 / k1^4.
constexpr double effective_mass_fraction = 0.2427;
} // namespace

double CantileverBeam::bending_stiffness() const {
    return material.youngs_modulus * width * thickness * thickness * thickness / 12.0;
}

double CantileverBeam::area() const { return width * thickness; }

void CantileverBeam::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw Error("bad_geometry", std::string(what) + " must be > 0");
    };
    positive(length, "length");
    positive(width, "width");
    positive(thickness, "thickness");
    positive(gap, "gap");
    material.validate();
}

std::vector<std::string> CantileverBeam::warnings() const {
    std::vector<std::string> w;
    if (length / thickness < 10.0)
        w.push_back("L/h = " + units::format(length / thickness, 3) +
                    " < 10: slender-beam theory is questionable for this geometry");
    return w;
}

void ModalResult::write_csv(std::ostream& out) const {
    out << "x_m,phi\n";
    for (size_t i = 0; i < x.size(); ++i)
        out << units::format(x[i]) << ',' << units::format(phi[i]) << '\n';
}

nlohmann::json ModalResult::to_json() const {
    nlohmann::json j;
    j["mode_index"] = mode_index;
    j["frequency_Hz"] = frequency;
    j["mode_constant"] = mode_constant;
    j["x_m"] = x;
    j["phi"] = phi;
    return j;
}

double LumpedBeam::omega1() const { return std::sqrt(k_eff / m_eff); }

std::vector<double> mode_constants(int n_max) {
    if (n_max < 1) throw Error("bad_input", "n_max must be >= 1");
    std::vector<double> roots;
    roots.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        // cos(x) cosh(x) = -1, rewritten as cos(x) + sech(x) = 0 so large
        // arguments stay finite. One root per interval around (2n-1) pi/2.
        auto f = [](double x) { return std::cos(x) + 1.0 / std::cosh(x); };
        auto df = [](double x) { return -std::sin(x) - std::tanh(x) / std::cosh(x); };
        double center = (2.0 * n - 1.0) * std::numbers::pi / 2.0;
        double lo = center - 0.6, hi = center + 0.6;
        double x = center;
        for (int it = 0; it < 100; ++it) {
            double fx = f(x);
            double step = fx / df(x);
            double next = x - step;
            if (next <= lo || next >= hi) next = 0.5 * (lo + hi); // safeguard
            if (f(lo) * f(next) <= 0.0)
                hi = next;
            else
                lo = next;
            if (std::fabs(next - x) < 1e-13 && std::fabs(fx) < 1e-13) {
                x = next;
                break;
            }
            x = next;
        }
        roots.push_back(x);
    }
    return roots;
}

namespace {

double angular_frequency(double kn, double thickness, double length, const Material& m) {
    return std::sqrt(kn * kn * kn * kn / 12.0) * (thickness / (length * length)) *
           std::sqrt(m.youngs_modulus / m.density);
}

} // namespace

double natural_frequency(const CantileverBeam& beam, int n) {
    beam.validate();
    if (n < 1) throw Error("bad_input", "mode index must be >= 1");
    double kn = mode_constants(n).back();
    return angular_frequency(kn, beam.thickness, beam.length, beam.material) / two_pi;
}

ModalResult mode_shape(const CantileverBeam& beam, int n, int samples) {
    beam.validate();
    if (n < 1) throw Error("bad_input", "mode index must be >= 1");
    if (samples < 2) throw Error("bad_input", "samples must be >= 2");

    double kn = mode_constants(n).back();
    double beta = kn / beam.length;
    double sigma = (std::cosh(kn) + std::cos(kn)) / (std::sinh(kn) + std::sin(kn));
    auto raw = [&](double x) {
        double bx = beta * x;
        return std::cosh(bx) - std::cos(bx) - sigma * (std::sinh(bx) - std::sin(bx));
    };
    double tip = raw(beam.length);

    ModalResult r;
    r.mode_index = n;
    r.mode_constant = kn;
    r.frequency = angular_frequency(kn, beam.thickness, beam.length, beam.material) / two_pi;
    r.x.resize(samples);
    r.phi.resize(samples);
    for (int i = 0; i < samples; ++i) {
        double x = beam.length * static_cast<double>(i) / (samples - 1);
        r.x[i] = x;
        r.phi[i] = raw(x) / tip;
    }
    return r;
}

std::vector<double> fd_modal_frequencies(const CantileverBeam& beam, int nodes) {
    beam.validate();
    if (nodes < 50) throw Error("insufficient_nodes", "need at least 50 grid nodes");

    // Energy-consistent second-order finite differences on x_j = j h,
    // j = 0..N, h = L/N. Unknowns y_1..y_N (clamp eliminates y_0); the zero
    // slope at the clamp enters through the ghost value y_{-1} = y_1. Free-end
    // conditions are natural in this form. K = EI h D^T W D with D the
    // nodal curvature operator, M the (diagonal) trapezoid mass matrix.
    const int N = nodes;
    const double h = beam.length / N;
    const double ei = beam.bending_stiffness();
    const double rho_a = beam.material.density * beam.area();

    Eigen::MatrixXd curvature = Eigen::MatrixXd::Zero(N, N);
    curvature(0, 0) = 2.0 / (h * h);
    if (N >= 2) {
        curvature(1, 0) = -2.0 / (h * h);
        curvature(1, 1) = 1.0 / (h * h);
    }
    for (int j = 2; j < N; ++j) {
        curvature(j, j - 2) = 1.0 / (h * h);
        curvature(j, j - 1) = -2.0 / (h * h);
        curvature(j, j) = 1.0 / (h * h);
    }
    Eigen::VectorXd weight = Eigen::VectorXd::Ones(N);
    weight(0) = 0.5;
    Eigen::MatrixXd stiffness = ei * h * curvature.transpose() * weight.asDiagonal() * curvature;

    Eigen::VectorXd mass = Eigen::VectorXd::Constant(N, rho_a * h);
    mass(N - 1) *= 0.5;

    // M is diagonal: reduce K phi = w^2 M phi to a standard symmetric
    // eigenproblem with the M^{-1/2} similarity.
    Eigen::VectorXd scale = mass.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd sym = scale.asDiagonal() * stiffness * scale.asDiagonal();
    sym = 0.5 * (sym + sym.transpose()); // scrub rounding asymmetry

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("eigensolver", "finite-difference eigensolve failed to converge");

    std::vector<double> freqs;
    for (int i = 0; i < 3 && i < N; ++i) {
        double lambda = std::max(solver.eigenvalues()(i), 0.0);
        freqs.push_back(std::sqrt(lambda) / two_pi);
    }
    return freqs;
}

double synthesize_length(double f_target, double thickness, const Material& material) {
    material.validate();
    if (!(f_target > 0.0)) throw Error("bad_input", "target frequency must be > 0");
    if (!(thickness > 0.0)) throw Error("bad_input", "thickness must be > 0");
    double kn = mode_constants(1).front();
    double coeff = std::sqrt(kn * kn * kn * kn / 12.0) *
                   std::sqrt(material.youngs_modulus / material.density);
    return std::sqrt(coeff * thickness / (two_pi * f_target));
}

LumpedBeam lumped_params(const CantileverBeam& beam) {
    beam.validate();
    LumpedBeam lb;
    double l3 = beam.length * beam.length * beam.length;
    lb.k_eff = 3.0 * beam.bending_stiffness() / l3;
    lb.m_eff = effective_mass_fraction * beam.material.density * beam.area() * beam.length;
    return lb;
}

} // namespace memsbpf
