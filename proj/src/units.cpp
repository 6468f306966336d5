#include "memsbpf/units.hpp"

#include <cmath>
#include <cstdio>

namespace memsbpf::units {

std::string format(double value, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
    return buf;
}

std::string format_eng(double si_value, std::string_view unit) {
    struct Prefix { double scale; const char* symbol; };
    static constexpr Prefix prefixes[] = {
        {1e-15, "f"}, {1e-12, "p"}, {1e-9, "n"}, {1e-6, "u"},
        {1e-3, "m"},  {1.0, ""},    {1e3, "k"},  {1e6, "M"}, {1e9, "G"},
    };
    double mag = std::fabs(si_value);
    const Prefix* chosen = &prefixes[5];
    if (mag > 0.0 && std::isfinite(mag)) {
        for (const auto& p : prefixes) {
            if (mag >= p.scale * 0.9999995) chosen = &p;
        }
        // nothing smaller than femto on offer; fall back to femto
        if (mag < prefixes[0].scale) chosen = &prefixes[0];
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.6g %s%.*s", si_value / chosen->scale, chosen->symbol,
                  static_cast<int>(unit.size()), unit.data());
    return buf;
}

} // namespace memsbpf::units
