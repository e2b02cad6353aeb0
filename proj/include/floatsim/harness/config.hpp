#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "floatsim/core.hpp"
#include "floatsim/errors.hpp"
#include "floatsim/geometry.hpp"
#include "floatsim/solid.hpp"

namespace floatsim::harness {

enum class BodyMode { absent, fixed, prescribed, free };
enum class ForcingKind { none, sinusoidal, solitary };

/// Boundary / initial forcing. Sinusoidal enters through the left ghost cell;
/// solitary is an initial profile with outflow at both ends.
struct Forcing {
    ForcingKind kind = ForcingKind::none;
    double amplitude = 1.0;
    double period = 15.0;
    double center = 80.0;  ///< initial crest abscissa (solitary only)
};

/// Everything needed to run one scenario. Defaults describe a 300 m flume at
/// rest depth 15 m with the R = 10 box+arc body at x0 = 150.
struct ScenarioConfig {
    FluidModel model = FluidModel::nsw;
    BodyMode body = BodyMode::absent;
    PhysicalParams params;
    HullSpec hull;
    double length = 300.0;
    double dx = 0.05;
    /// Fixed dt/dx. Required when a body is present.
    std::optional<double> alpha;
    double cfl_max = 0.5;
    double t_end = 10.0;
    /// Initial elevation of C; equilibrium when unset.
    std::optional<double> z_c0;
    double heave_amplitude = 2.0;
    double heave_period = 10.0;
    Forcing forcing;
    std::string output_dir = "output";
    /// Time between timeseries rows (0: every step).
    double output_interval = 0.1;
    /// Time between snapshots (0: initial and final only).
    double snapshot_interval = 0.0;

    void validate() const {
        params.validate();
        if (!(length > 0.0)) throw ConfigError("length must be positive");
        if (!(dx > 0.0) || dx > length) throw ConfigError("dx must lie in (0, length]");
        if (!(t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
        if (!(cfl_max > 0.0)) throw ConfigError("cfl must be positive");
        if (alpha && !(*alpha > 0.0)) throw ConfigError("alpha must be positive");
        if (body != BodyMode::absent && !alpha) {
            throw ConfigError("a fixed alpha = dt/dx is required when a body is present");
        }
        if (body != BodyMode::absent) {
            if (!(hull.radius > 0.0)) throw ConfigError("radius must be positive");
            if (hull.x0 - hull.radius <= 0.0 || hull.x0 + hull.radius >= length) {
                throw ConfigError("body must lie strictly inside the domain");
            }
            if (!(hull.density_ratio > 0.0 && hull.density_ratio < 1.0)) {
                throw ConfigError("density_ratio must lie in (0, 1)");
            }
        }
        if (body == BodyMode::prescribed && !(heave_period > 0.0)) {
            throw ConfigError("heave_period must be positive");
        }
        if (forcing.kind == ForcingKind::sinusoidal && !(forcing.period > 0.0)) {
            throw ConfigError("forcing_period must be positive");
        }
        if (forcing.kind == ForcingKind::solitary && !(forcing.amplitude > 0.0)) {
            throw ConfigError("solitary amplitude must be positive");
        }
        if (output_interval < 0.0 || snapshot_interval < 0.0) {
            throw ConfigError("output intervals must be non-negative");
        }
    }
};

inline std::string to_string(FluidModel m) { return m == FluidModel::nsw ? "nsw" : "boussinesq"; }

inline std::string to_string(BodyMode b) {
    switch (b) {
    case BodyMode::absent: return "absent";
    case BodyMode::fixed: return "fixed";
    case BodyMode::prescribed: return "prescribed";
    case BodyMode::free: return "free";
    }
    return "?";
}

inline std::string to_string(ForcingKind f) {
    switch (f) {
    case ForcingKind::none: return "none";
    case ForcingKind::sinusoidal: return "sinusoidal";
    case ForcingKind::solitary: return "solitary";
    }
    return "?";
}

inline std::string to_string(HullShape s) { return s == HullShape::box_arc ? "box_arc" : "rectangle"; }

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
    }
    return out;
}

template <class E>
E parse_enum(const std::string& key, const std::string& v,
             std::initializer_list<std::pair<const char*, E>> options) {
    for (const auto& [name, value] : options) {
        if (v == name) return value;
    }
    std::string msg = "key '" + key + "': unknown value '" + v + "' (expected";
    for (const auto& o : options) msg += std::string(" ") + o.first;
    throw ConfigError(msg + ")");
}

}  // namespace detail

/// Applies one key = value pair. Throws ConfigError on unknown keys or bad
/// values.
inline void apply_setting(ScenarioConfig& c, const std::string& key, const std::string& value) {
    using detail::parse_double;
    using detail::parse_enum;
    if (key == "model") {
        c.model = parse_enum<FluidModel>(key, value, {{"nsw", FluidModel::nsw},
                                                      {"boussinesq", FluidModel::boussinesq}});
    } else if (key == "body") {
        c.body = parse_enum<BodyMode>(key, value, {{"absent", BodyMode::absent},
                                                   {"fixed", BodyMode::fixed},
                                                   {"prescribed", BodyMode::prescribed},
                                                   {"free", BodyMode::free}});
    } else if (key == "hull") {
        c.hull.shape = parse_enum<HullShape>(
            key, value, {{"box_arc", HullShape::box_arc}, {"rectangle", HullShape::rectangle}});
    } else if (key == "forcing") {
        c.forcing.kind = parse_enum<ForcingKind>(key, value,
                                                 {{"none", ForcingKind::none},
                                                  {"sinusoidal", ForcingKind::sinusoidal},
                                                  {"solitary", ForcingKind::solitary}});
    } else if (key == "output_dir") {
        c.output_dir = value;
    } else {
        const std::map<std::string, double*> numeric = {
            {"h0", &c.params.h0},
            {"g", &c.params.g},
            {"rho", &c.params.rho},
            {"length", &c.length},
            {"dx", &c.dx},
            {"x0", &c.hull.x0},
            {"radius", &c.hull.radius},
            {"density_ratio", &c.hull.density_ratio},
            {"cfl", &c.cfl_max},
            {"t_end", &c.t_end},
            {"heave_amplitude", &c.heave_amplitude},
            {"heave_period", &c.heave_period},
            {"forcing_amplitude", &c.forcing.amplitude},
            {"forcing_period", &c.forcing.period},
            {"solitary_center", &c.forcing.center},
            {"output_interval", &c.output_interval},
            {"snapshot_interval", &c.snapshot_interval},
        };
        if (key == "alpha") {
            c.alpha = parse_double(key, value);
        } else if (key == "z_c0") {
            c.z_c0 = parse_double(key, value);
        } else if (auto it = numeric.find(key); it != numeric.end()) {
            *it->second = parse_double(key, value);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
}

/// Parses the flat `key = value` format. `#` starts a comment; blank lines are
/// ignored. The result is validated.
inline ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = detail::trim(std::string_view(t).substr(0, eq));
        const std::string value = detail::trim(std::string_view(t).substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }
        try {
            apply_setting(c, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    c.validate();
    return c;
}

inline ScenarioConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

/// Inverse of parse_config (round-trips every field).
inline std::string format_config(const ScenarioConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "model = " << to_string(c.model) << '\n'
       << "body = " << to_string(c.body) << '\n'
       << "hull = " << to_string(c.hull.shape) << '\n'
       << "h0 = " << c.params.h0 << '\n'
       << "g = " << c.params.g << '\n'
       << "rho = " << c.params.rho << '\n'
       << "length = " << c.length << '\n'
       << "dx = " << c.dx << '\n'
       << "x0 = " << c.hull.x0 << '\n'
       << "radius = " << c.hull.radius << '\n'
       << "density_ratio = " << c.hull.density_ratio << '\n';
    if (c.alpha) os << "alpha = " << *c.alpha << '\n';
    os << "cfl = " << c.cfl_max << '\n' << "t_end = " << c.t_end << '\n';
    if (c.z_c0) os << "z_c0 = " << *c.z_c0 << '\n';
    os << "heave_amplitude = " << c.heave_amplitude << '\n'
       << "heave_period = " << c.heave_period << '\n'
       << "forcing = " << to_string(c.forcing.kind) << '\n'
       << "forcing_amplitude = " << c.forcing.amplitude << '\n'
       << "forcing_period = " << c.forcing.period << '\n'
       << "solitary_center = " << c.forcing.center << '\n'
       << "output_dir = " << c.output_dir << '\n'
       << "output_interval = " << c.output_interval << '\n'
       << "snapshot_interval = " << c.snapshot_interval << '\n';
    return os.str();
}

}  // namespace floatsim::harness
