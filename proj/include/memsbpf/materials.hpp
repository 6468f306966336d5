#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace memsbpf {

inline constexpr double vacuum_permittivity = 8.854187817e-12; // F/m

struct Material {
    std::string name;
    double youngs_modulus = 0.0; // Pa
    double density = 0.0;        // kg/m^3

    void validate() const; // throws Error("bad_material") unless both > 0
};

struct Ambient {
    double dynamic_viscosity = 0.0; // Pa*s
    double permittivity = 0.0;      // F/m

    void validate() const;
};

// Named constants registry. Ships with "polysilicon" and "air"; entries can
// be overridden or extended from a key = value config file (see README for
// the schema).
//
// The polysilicon defaults (E = 160 GPa, rho = 2330 kg/m^3) are not measured
// values: they are the pair that makes a 76.7 um x 2 um cantilever resonate
// at 455 kHz, which is the anchor this toolkit is calibrated against.
class MaterialRegistry {
public:
    static MaterialRegistry with_defaults();

    const Material& material(const std::string& name) const;
    const Ambient& ambient(const std::string& name) const;
    bool has_material(const std::string& name) const;

    void set_material(const Material& m);
    void set_ambient(const std::string& name, const Ambient& a);

    // Parses "material.<name>.<field> = <value>" / "ambient.<name>.<field> = <value>"
    // lines. '#' starts a comment. Unknown keys are errors; every entry
    // touched must end up fully positive.
    void load_config(std::istream& in, const std::string& origin);
    void load_config_file(const std::string& path);

private:
    std::map<std::string, Material> materials_;
    std::map<std::string, Ambient> ambients_;
};

} // namespace memsbpf
