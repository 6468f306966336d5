#include <doctest.h>

#include "memsbpf/error.hpp"
#include "memsbpf/filters.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace memsbpf;

namespace {
const Material polysilicon{"polysilicon", 160e9, 2330.0};
constexpr double two_pi = 2.0 * std::numbers::pi;
} // namespace

TEST_CASE("RC transfer function") {
    RCFilter f{890e3, 387.3e-15};
    double f0 = rc_center_frequency(f);

    SUBCASE("at the centre frequency |H| = 1/3 exactly and phase = 0") {
        auto p = rc_response(f, f0);
        CHECK(p.magnitude == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(std::fabs(p.phase) < 1e-12);
    }

    SUBCASE("band-pass limits vanish") {
        CHECK(rc_response(f, f0 * 1e-7).magnitude < 1e-6);
        CHECK(rc_response(f, f0 * 1e7).magnitude < 1e-6);
    }

    SUBCASE("890 kohm with 387.3 fF peaks at 461.7 kHz") {
        CHECK(f0 == doctest::Approx(461.7e3).epsilon(1e-3));
    }

    SUBCASE("903 kohm with 387.3 fF centres at 455 kHz within 0.3%") {
        CHECK(rc_center_frequency({903e3, 387.3e-15}) == doctest::Approx(455e3).epsilon(3e-3));
    }

    SUBCASE("doubling R halves the centre frequency") {
        CHECK(rc_center_frequency({2.0 * f.resistance, f.capacitance}) ==
              doctest::Approx(0.5 * f0).epsilon(1e-14));
    }
}

TEST_CASE("half-power analysis of the RC curve") {
    RCFilter f{890e3, 387.3e-15};
    double f0 = rc_center_frequency(f);
    auto curve = rc_response_curve(f, log_grid(f0 / 100.0, f0 * 100.0, 200));
    auto s = half_power_analysis(curve);

    SUBCASE("cutoffs sit at (sqrt(13) -+ 3)/2 times f0") {
        const double r = (std::sqrt(13.0) - 3.0) / 2.0; // 0.302776
        CHECK(s.f_low == doctest::Approx(r * f0).epsilon(2e-3));
        CHECK(s.f_high == doctest::Approx((r + 3.0) * f0).epsilon(2e-3));
    }

    SUBCASE("Q = 1/3 within 0.5% at 200 points/decade") {
        CHECK(s.q == doctest::Approx(1.0 / 3.0).epsilon(5e-3));
    }

    SUBCASE("890 kohm cutoffs land at 139.8 kHz and 1.525 MHz") {
        CHECK(s.f_low == doctest::Approx(139.8e3).epsilon(5e-3));
        CHECK(s.f_high == doctest::Approx(1.525e6).epsilon(5e-3));
        // graph-read reference values for this configuration
        CHECK(std::fabs(s.f_low - 139e3) / 139e3 < 0.05);
        CHECK(std::fabs(s.f_high - 1.48e6) / 1.48e6 < 0.05);
    }

    SUBCASE("a 455/(1480-139) kHz arithmetic cross-check gives 0.34") {
        CHECK(455e3 / (1.48e6 - 139e3) == doctest::Approx(0.34).epsilon(0.005));
    }

    SUBCASE("monotone curve has no peak") {
        ResponseCurve mono;
        for (int i = 0; i < 20; ++i)
            mono.points.push_back({1e3 * (i + 1), 1.0 / (i + 1.0), 0.0});
        CHECK_THROWS_WITH_AS(half_power_analysis(mono), doctest::Contains("interior"), Error);
    }

    SUBCASE("cutoff outside the sampled range is an error") {
        auto narrow = rc_response_curve(f, log_grid(f0 / 1.5, f0 * 1.5, 300));
        CHECK_THROWS_AS(half_power_analysis(narrow), Error);
    }
}

TEST_CASE("resistance synthesis") {
    SUBCASE("455 kHz with 387.3 fF needs 903 kohm within 0.5%") {
        CHECK(synthesize_resistance(455e3, 387.3e-15) == doctest::Approx(903e3).epsilon(5e-3));
    }

    SUBCASE("doubling C halves R") {
        CHECK(synthesize_resistance(455e3, 2.0 * 387.3e-15) ==
              doctest::Approx(0.5 * synthesize_resistance(455e3, 387.3e-15)).epsilon(1e-14));
    }

    SUBCASE("round-trips with the centre frequency to 1e-12") {
        double r = synthesize_resistance(455e3, 387.3e-15);
        CHECK(rc_center_frequency({r, 387.3e-15}) == doctest::Approx(455e3).epsilon(1e-12));
    }
}

TEST_CASE("serpentine resistance") {
    SUBCASE("one square with no corners is the sheet resistance") {
        CHECK(serpentine_resistance(5e-6, 5e-6, 1, 0, 30.0) == doctest::Approx(30.0));
    }

    SUBCASE("100 segments of 300 um x 1 um at 30 ohm/sq reach ~902 kohm") {
        CHECK(serpentine_resistance(300e-6, 1e-6, 100, 99, 30.0) ==
              doctest::Approx(901.7e3).epsilon(1e-3));
    }

    SUBCASE("doubling the width halves the square-count term") {
        double r1 = serpentine_resistance(300e-6, 1e-6, 100, 0, 30.0);
        double r2 = serpentine_resistance(300e-6, 2e-6, 100, 0, 30.0);
        CHECK(r1 == doctest::Approx(2.0 * r2).epsilon(1e-14));
    }
}

TEST_CASE("response curve serialisation") {
    RCFilter f{890e3, 387.3e-15};
    double f0 = rc_center_frequency(f);
    auto curve = rc_response_curve(f, log_grid(f0 / 2.0, f0 * 2.0, 10));
    std::ostringstream csv;
    curve.write_csv(csv);
    CHECK(csv.str().rfind("frequency_Hz,magnitude,phase_rad\n", 0) == 0);
    auto j = curve.to_json();
    CHECK(j["points"].size() == curve.points.size());
    CHECK(j["points"][0].contains("phase_rad"));
}

TEST_CASE("resonator electromechanical response") {
    CantileverBeam beam{76.7e-6, 10e-6, 2e-6, 2e-6, polysilicon};
    LumpedBeam lumped = lumped_params(beam);
    double f1 = lumped.omega1() / two_pi;
    ResonatorDrive drive{10.0, 0.1, beam.length / 3.0 * beam.width, 0.0};

    SUBCASE("output current follows i = V_p C_var omega") {
        auto op = resonator_response(beam, lumped, 50.0, drive, f1);
        CHECK(op.output_current ==
              doctest::Approx(drive.bias_voltage * op.c_var * two_pi * f1).epsilon(1e-12));
        // frozen spot value of that relation: 10 V x 1 fF at 455 kHz
        double spot = 10.0 * 1e-15 * two_pi * 455e3;
        CHECK(spot == doctest::Approx(28.6e-9).epsilon(5e-3));
    }

    SUBCASE("resonant amplification equals Q times the static deflection") {
        for (double q : {10.0, 50.0, 200.0}) {
            auto op = resonator_response(beam, lumped, q, drive, f1);
            double force = vacuum_permittivity * drive.electrode_area * drive.bias_voltage *
                           drive.drive_amplitude / (beam.gap * beam.gap);
            CHECK(op.tip_displacement ==
                  doctest::Approx(q * force / lumped.k_eff).epsilon(1e-9));
        }
    }

    SUBCASE("no drive, no response") {
        ResonatorDrive silent = drive;
        silent.drive_amplitude = 0.0;
        auto op = resonator_response(beam, lumped, 50.0, silent, f1);
        CHECK(op.tip_displacement == 0.0);
        CHECK(op.output_current == 0.0);
    }

    SUBCASE("response scales linearly with the drive amplitude") {
        auto op1 = resonator_response(beam, lumped, 50.0, drive, 1.07 * f1);
        ResonatorDrive doubled = drive;
        doubled.drive_amplitude *= 2.0;
        auto op2 = resonator_response(beam, lumped, 50.0, doubled, 1.07 * f1);
        CHECK(op2.output_current == doctest::Approx(2.0 * op1.output_current).epsilon(1e-12));
        CHECK(op2.tip_displacement == doctest::Approx(2.0 * op1.tip_displacement).epsilon(1e-12));
    }

    SUBCASE("large drive amplitude warns") {
        ResonatorDrive loud = drive;
        loud.drive_amplitude = 2.0;
        CHECK_FALSE(drive.warnings().size());
        CHECK(loud.warnings().size() == 1);
    }
}

TEST_CASE("resonator band-pass curve") {
    CantileverBeam beam{76.7e-6, 10e-6, 2e-6, 2e-6, polysilicon};
    LumpedBeam lumped = lumped_params(beam);
    double f1 = lumped.omega1() / two_pi;
    ResonatorDrive drive{10.0, 0.1, beam.length / 3.0 * beam.width, 0.0};

    SUBCASE("extracted Q matches the mechanical Q within 2% across [10, 200]") {
        for (double q : {10.0, 25.0, 50.0, 100.0, 200.0}) {
            int ppd = static_cast<int>(std::ceil(40.0 * q));
            auto curve = resonator_bandpass_curve(beam, lumped, q, drive,
                                                  log_grid(f1 / 4.0, f1 * 4.0, ppd));
            auto s = half_power_analysis(curve);
            CHECK(std::fabs(s.q - q) / q < 0.02);
        }
    }

    SUBCASE("peak frequency within 0.1% of mode 1 for Q = 50") {
        auto curve = resonator_bandpass_curve(beam, lumped, 50.0, drive,
                                              log_grid(f1 / 4.0, f1 * 4.0, 2000));
        auto s = half_power_analysis(curve);
        CHECK(std::fabs(s.f_center - f1) / f1 < 1e-3);
    }

    SUBCASE("second harmonic is strongly rejected at Q = 50") {
        auto grid = log_grid(f1 / 4.0, f1 * 4.0, 2000);
        auto curve = resonator_bandpass_curve(beam, lumped, 50.0, drive, grid, true);
        double at_peak = 0.0, at_double = 1.0;
        for (const auto& p : curve.points) {
            at_peak = std::max(at_peak, p.magnitude);
            if (std::fabs(p.frequency - 2.0 * f1) / (2.0 * f1) < 1e-3)
                at_double = p.magnitude;
        }
        CHECK(at_peak == doctest::Approx(1.0));
        CHECK(at_double < 0.05);
    }

    SUBCASE("grid that misses the resonance is rejected") {
        CHECK_THROWS_WITH_AS(
            resonator_bandpass_curve(beam, lumped, 50.0, drive, log_grid(2.0 * f1, 4.0 * f1, 100)),
            doctest::Contains("resonance"), Error);
    }
}
