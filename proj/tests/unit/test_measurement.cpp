#include <doctest.h>

#include "memsbpf/error.hpp"
#include "memsbpf/measurement.hpp"

#include <cmath>
#include <sstream>

using namespace memsbpf;

namespace {

MeasuredCurve curve_from(const std::string& text, CurveKind kind) {
    std::istringstream in(text);
    return parse_curve(in, kind, "<test>");
}

// Displacement-amplitude Lorentzian used as ground truth for the peak finder.
MeasuredCurve synthetic_lorentzian(double f0, double q, double df, double f_lo, double f_hi) {
    MeasuredCurve c;
    c.kind = CurveKind::spectrum;
    c.label = "synthetic";
    c.x_unit = "Hz";
    c.y_unit = "arb";
    for (double f = f_lo; f <= f_hi + 0.5 * df; f += df) {
        double y = 1.0 / std::sqrt(std::pow(f0 * f0 - f * f, 2) + std::pow(f0 * f / q, 2));
        c.x.push_back(f);
        c.y.push_back(y);
    }
    return c;
}

} // namespace

TEST_CASE("csv parsing") {
    SUBCASE("header, comments and data round-trip") {
        auto c = curve_from("# comment\nvoltage_V,capacitance_F\n0,1e-12\n1,2e-12\n2,3e-12\n",
                            CurveKind::cv);
        CHECK(c.x.size() == 3);
        CHECK(c.y[2] == doctest::Approx(3e-12));
        CHECK(c.x_unit == "V");
        CHECK(c.y_unit == "F");
    }

    SUBCASE("duplicate x is a non-monotonic error") {
        CHECK_THROWS_WITH_AS(
            curve_from("voltage_V,capacitance_F\n0,1e-12\n1,2e-12\n1,3e-12\n", CurveKind::cv),
            doctest::Contains("increasing"), Error);
    }

    SUBCASE("bad numbers carry the line number") {
        try {
            curve_from("voltage_V,capacitance_F\n0,1e-12\n1,two\n2,3e-12\n", CurveKind::cv);
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.code() == "parse");
            CHECK(std::string(e.what()).find(":3") != std::string::npos);
        }
    }

    SUBCASE("wrong header is a unit mismatch") {
        CHECK_THROWS_WITH_AS(
            curve_from("bias_V,cap_pF\n0,1\n1,2\n2,3\n", CurveKind::cv),
            doctest::Contains("voltage_V"), Error);
        CHECK_THROWS_AS(
            curve_from("voltage_V,capacitance_F\n0,1\n1,2\n2,3\n", CurveKind::spectrum), Error);
    }

    SUBCASE("spectrum amplitude unit comes from the header suffix") {
        auto c = curve_from("frequency_Hz,amplitude_nm\n1,1\n2,2\n3,1\n", CurveKind::spectrum);
        CHECK(c.y_unit == "nm");
        auto plain = curve_from("frequency_Hz,amplitude\n1,1\n2,2\n3,1\n", CurveKind::spectrum);
        CHECK(plain.y_unit == "arb");
    }

    SUBCASE("fewer than 3 points is rejected") {
        CHECK_THROWS_AS(curve_from("voltage_V,capacitance_F\n0,1e-12\n1,2e-12\n", CurveKind::cv),
                        Error);
    }
}

TEST_CASE("parasitic extraction") {
    CVCurve model;
    for (int i = 0; i <= 20; ++i) {
        double v = 0.4 * i;
        model.points.push_back({v, 300e-15 + 2e-15 * i * i / 40.0});
    }

    SUBCASE("constructed constant offset is recovered to machine precision") {
        MeasuredCurve measured;
        measured.kind = CurveKind::cv;
        for (const auto& p : model.points) {
            measured.x.push_back(p.voltage);
            measured.y.push_back(p.capacitance + 1.0e-12);
        }
        CHECK(std::fabs(extract_parasitic(measured, model) - 1.0e-12) < 1e-15);
    }

    SUBCASE("offset is stable under 2x subsampling") {
        MeasuredCurve measured;
        measured.kind = CurveKind::cv;
        for (size_t i = 0; i < model.points.size(); ++i) {
            measured.x.push_back(model.points[i].voltage);
            // mild shape mismatch so the fit is not trivially exact
            measured.y.push_back(model.points[i].capacitance + 1.5e-12 +
                                 3e-17 * std::sin(0.9 * i));
        }
        double full = extract_parasitic(measured, model);
        MeasuredCurve half;
        half.kind = CurveKind::cv;
        for (size_t i = 0; i < measured.x.size(); i += 2) {
            half.x.push_back(measured.x[i]);
            half.y.push_back(measured.y[i]);
        }
        double sub = extract_parasitic(half, model);
        CHECK(std::fabs(sub - full) / full < 0.02);
    }

    SUBCASE("disjoint voltage ranges are an error") {
        MeasuredCurve measured;
        measured.kind = CurveKind::cv;
        for (int i = 0; i < 5; ++i) {
            measured.x.push_back(20.0 + i);
            measured.y.push_back(1e-12);
        }
        CHECK_THROWS_WITH_AS(extract_parasitic(measured, model), doctest::Contains("overlap"),
                             Error);
    }
}

TEST_CASE("resonance peak extraction") {
    SUBCASE("synthetic 441.2 kHz Lorentzian at 1 kHz sampling") {
        auto spectrum = synthetic_lorentzian(441.2e3, 50.0, 1e3, 300e3, 600e3);
        auto peak = find_resonance_peak(spectrum);
        CHECK(std::fabs(peak.frequency - 441.2e3) < 0.2e3);
        REQUIRE(peak.q.has_value());
        CHECK(std::fabs(*peak.q - 50.0) / 50.0 < 0.05);
    }

    SUBCASE("peak recovery stays within half the sample spacing for Q >= 10") {
        for (double q : {10.0, 30.0, 100.0}) {
            for (double f0 : {430.7e3, 441.2e3, 455.48e3}) {
                auto spectrum = synthetic_lorentzian(f0, q, 1e3, 350e3, 550e3);
                auto peak = find_resonance_peak(spectrum);
                // the continuous-curve maximum sits slightly below f0
                double f_max = f0 * std::sqrt(1.0 - 0.5 / (q * q));
                CHECK(std::fabs(peak.frequency - f_max) < 0.5e3);
            }
        }
    }

    SUBCASE("Q estimate is absent when a crossing leaves the range") {
        auto spectrum = synthetic_lorentzian(441.2e3, 50.0, 1e3, 437e3, 446e3);
        auto peak = find_resonance_peak(spectrum);
        CHECK_FALSE(peak.q.has_value());
    }

    SUBCASE("monotone spectrum has no peak") {
        MeasuredCurve mono;
        mono.kind = CurveKind::spectrum;
        for (int i = 0; i < 10; ++i) {
            mono.x.push_back(1e3 * (i + 1));
            mono.y.push_back(1.0 + i);
        }
        CHECK_THROWS_WITH_AS(find_resonance_peak(mono), doctest::Contains("maximum"), Error);
    }
}
