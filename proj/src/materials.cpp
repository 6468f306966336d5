#include "memsbpf/materials.hpp"

#include "memsbpf/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace memsbpf {

void Material::validate() const {
    if (!(youngs_modulus > 0.0))
        throw Error("bad_material", "material '" + name + "': youngs_modulus must be > 0");
    if (!(density > 0.0))
        throw Error("bad_material", "material '" + name + "': density must be > 0");
}

void Ambient::validate() const {
    if (!(dynamic_viscosity > 0.0))
        throw Error("bad_material", "ambient: dynamic_viscosity must be > 0");
    if (!(permittivity > 0.0))
        throw Error("bad_material", "ambient: permittivity must be > 0");
}

MaterialRegistry MaterialRegistry::with_defaults() {
    MaterialRegistry r;
    // Pair chosen to hit the 455 kHz @ (L = 76.7 um, h = 2 um) anchor.
    r.set_material({"polysilicon", 160e9, 2330.0});
    r.set_ambient("air", {1.81e-5, vacuum_permittivity});
    return r;
}

const Material& MaterialRegistry::material(const std::string& name) const {
    auto it = materials_.find(name);
    if (it == materials_.end())
        throw Error("unknown_material", "unknown material '" + name + "'");
    return it->second;
}

const Ambient& MaterialRegistry::ambient(const std::string& name) const {
    auto it = ambients_.find(name);
    if (it == ambients_.end())
        throw Error("unknown_material", "unknown ambient '" + name + "'");
    return it->second;
}

bool MaterialRegistry::has_material(const std::string& name) const {
    return materials_.count(name) != 0;
}

void MaterialRegistry::set_material(const Material& m) {
    m.validate();
    materials_[m.name] = m;
}

void MaterialRegistry::set_ambient(const std::string& name, const Ambient& a) {
    a.validate();
    ambients_[name] = a;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& origin, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw Error("parse", origin + ":" + std::to_string(line) + ": bad number '" + text + "'");
    return v;
}

} // namespace

void MaterialRegistry::load_config(std::istream& in, const std::string& origin) {
    std::string line;
    int lineno = 0;
    std::set<std::string> touched_materials;
    std::set<std::string> touched_ambients;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw Error("parse", origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        double value = parse_number(trim(s.substr(eq + 1)), origin, lineno);

        // key grammar: (material|ambient).<name>.<field>
        size_t d1 = key.find('.');
        size_t d2 = key.rfind('.');
        if (d1 == std::string::npos || d2 == d1)
            throw Error("parse", origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        std::string scope = key.substr(0, d1);
        std::string name = key.substr(d1 + 1, d2 - d1 - 1);
        std::string field = key.substr(d2 + 1);

        if (scope == "material") {
            Material& m = materials_[name];
            m.name = name;
            if (field == "youngs_modulus") m.youngs_modulus = value;
            else if (field == "density") m.density = value;
            else throw Error("parse", origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
            touched_materials.insert(name);
        } else if (scope == "ambient") {
            Ambient& a = ambients_[name];
            if (field == "dynamic_viscosity") a.dynamic_viscosity = value;
            else if (field == "permittivity") a.permittivity = value;
            else throw Error("parse", origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
            touched_ambients.insert(name);
        } else {
            throw Error("parse", origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    for (const auto& n : touched_materials) materials_[n].validate();
    for (const auto& n : touched_ambients) ambients_[n].validate();
}

void MaterialRegistry::load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open config file '" + path + "'");
    load_config(in, path);
}

} // namespace memsbpf
