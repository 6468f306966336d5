#pragma once

#include <string>
#include <string_view>

namespace memsbpf::units {

// All model quantities are SI base units. These scales exist for the
// display/parse boundary only.
inline constexpr double femto = 1e-15;
inline constexpr double pico  = 1e-12;
inline constexpr double nano  = 1e-9;
inline constexpr double micro = 1e-6;
inline constexpr double milli = 1e-3;
inline constexpr double kilo  = 1e3;
inline constexpr double mega  = 1e6;
inline constexpr double giga  = 1e9;

inline double to_display(double si_value, double unit_scale) { return si_value / unit_scale; }
inline double from_display(double display_value, double unit_scale) { return display_value * unit_scale; }

// Fixed-form "%.*g" rendering; 12 significant digits by default so values
// survive a print/parse round trip.
std::string format(double value, int significant_digits = 12);

// Engineering notation with an SI prefix, 6 significant digits:
// format_eng(76.7076e-6, "m") -> "76.7076 um".
std::string format_eng(double si_value, std::string_view unit);

} // namespace memsbpf::units
