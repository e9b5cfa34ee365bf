#ifndef OPTOLEVER_CONFIG_HPP
#define OPTOLEVER_CONFIG_HPP

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "optolever/errors.hpp"
#include "optolever/rotation.hpp"
#include "optolever/spectrum.hpp"

// Line-oriented `key = value` run configuration. `#` starts a comment.
// Units are fixed by the key suffix.

namespace optolever {

enum class Channel
{
    rotation,
    translation,
};

struct RunConfig
{
    LeverConfig lever;
    double f_min_hz = 0.0;
    double f_max_hz = 0.0;
    int n_points = 0;
    GridScale scale = GridScale::log;
    Channel channel = Channel::rotation;
    bool asd = false;

    std::vector<double> grid() const { return frequency_grid(f_min_hz, f_max_hz, n_points, scale); }
};

class ConfigError : public Error
{
public:
    enum class Kind
    {
        syntax,
        missing_key,
        unknown_key,
        unit_or_range,
    };

    ConfigError(Kind kind, std::string source, int line, std::string key, const std::string& what)
        : Error(format(kind, source, line, key, what)),
          kind_(kind), source_(std::move(source)), line_(line), key_(std::move(key))
    {
    }

    Kind kind() const { return kind_; }
    const std::string& source() const { return source_; }
    int line() const { return line_; }  // 0 when the key is absent
    const std::string& key() const { return key_; }

private:
    static std::string format(Kind kind, const std::string& source, int line, const std::string& key,
                              const std::string& what)
    {
        static constexpr const char* names[] = {"SyntaxError", "MissingKey", "UnknownKey", "UnitOrRangeViolation"};
        std::string loc = source;
        if (line > 0)
            loc += ":" + std::to_string(line);
        return loc + ": " + names[static_cast<int>(kind)] + ": " + (key.empty() ? "" : "'" + key + "' ") + what;
    }

    Kind kind_;
    std::string source_;
    int line_;
    std::string key_;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

struct ConfigEntry
{
    std::string value;
    int line = 0;
};

} // namespace detail

inline const std::set<std::string, std::less<>>& config_keys()
{
    static const std::set<std::string, std::less<>> keys = {
        "wavelength_m", "waist_m", "power_w", "inertia_kgm2", "mass_kg", "mirror_z_m", "detect_z_m",
        "f_min_hz", "f_max_hz", "n_points", "scale", "channel", "asd"};
    return keys;
}

/// Parse and validate a run configuration. `source` names the input in diagnostics.
inline RunConfig parse_config(std::string_view text, const std::string& source = "<config>")
{
    using Kind = ConfigError::Kind;
    std::map<std::string, detail::ConfigEntry, std::less<>> entries;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(Kind::syntax, source, line_no, "", "expected 'key = value'");
        const std::string key{detail::trim(line.substr(0, eq))};
        const std::string value{detail::trim(line.substr(eq + 1))};
        if (key.empty() || value.empty())
            throw ConfigError(Kind::syntax, source, line_no, key, "expected 'key = value'");
        if (!config_keys().contains(key))
            throw ConfigError(Kind::unknown_key, source, line_no, key, "is not a recognised key");
        if (entries.contains(key))
            throw ConfigError(Kind::syntax, source, line_no, key,
                              "duplicates line " + std::to_string(entries[key].line));
        entries[key] = {value, line_no};
    }

    const auto find = [&](std::string_view key) -> const detail::ConfigEntry* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    const auto require = [&](std::string_view key) -> const detail::ConfigEntry& {
        const auto* e = find(key);
        if (!e)
            throw ConfigError(Kind::missing_key, source, 0, std::string(key), "is required");
        return *e;
    };
    const auto number = [&](std::string_view key, const detail::ConfigEntry& e) {
        double v = 0.0;
        const char* end = e.value.data() + e.value.size();
        const auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v))
            throw ConfigError(Kind::unit_or_range, source, e.line, std::string(key),
                              "expects a finite number, got '" + e.value + "'");
        return v;
    };
    const auto positive = [&](std::string_view key) {
        const auto& e = require(key);
        const double v = number(key, e);
        if (!(v > 0.0))
            throw ConfigError(Kind::unit_or_range, source, e.line, std::string(key), "must be positive");
        return v;
    };
    const auto choice = [&](std::string_view key, std::initializer_list<std::string_view> allowed,
                            std::string_view fallback) -> std::string {
        const auto* e = find(key);
        if (!e)
            return std::string(fallback);
        for (const auto a : allowed)
            if (e->value == a)
                return e->value;
        std::string list;
        for (const auto a : allowed)
            list += (list.empty() ? "" : "|") + std::string(a);
        throw ConfigError(Kind::unit_or_range, source, e->line, std::string(key), "must be one of " + list);
    };

    const double wavelength = positive("wavelength_m");
    const double waist = positive("waist_m");
    const double power = positive("power_w");
    const double inertia = positive("inertia_kgm2");
    std::optional<double> mass;
    if (find("mass_kg"))
        mass = positive("mass_kg");
    const double mirror_z = number("mirror_z_m", require("mirror_z_m"));
    const auto& detect_entry = require("detect_z_m");
    const double detect_z = number("detect_z_m", detect_entry);
    if (!(detect_z > mirror_z))
        throw ConfigError(Kind::unit_or_range, source, detect_entry.line, "detect_z_m",
                          "must exceed mirror_z_m (detector downstream of the mirror)");

    RunConfig cfg{LeverConfig{BeamParams(wavelength, waist), power, inertia, mass, mirror_z, detect_z}};
    cfg.f_min_hz = positive("f_min_hz");
    const auto& fmax_entry = require("f_max_hz");
    cfg.f_max_hz = number("f_max_hz", fmax_entry);
    if (!(cfg.f_max_hz > cfg.f_min_hz))
        throw ConfigError(Kind::unit_or_range, source, fmax_entry.line, "f_max_hz", "must exceed f_min_hz");

    const auto& n_entry = require("n_points");
    int n = 0;
    {
        const char* end = n_entry.value.data() + n_entry.value.size();
        const auto [ptr, ec] = std::from_chars(n_entry.value.data(), end, n);
        if (ec != std::errc{} || ptr != end || n < 2)
            throw ConfigError(Kind::unit_or_range, source, n_entry.line, "n_points", "must be an integer >= 2");
    }
    cfg.n_points = n;

    cfg.scale = choice("scale", {"log", "linear"}, "log") == "log" ? GridScale::log : GridScale::linear;
    cfg.channel = choice("channel", {"rotation", "translation"}, "rotation") == "rotation" ? Channel::rotation
                                                                                           : Channel::translation;
    cfg.asd = choice("asd", {"true", "false"}, "false") == "true";
    if (cfg.channel == Channel::translation && !mass)
        throw ConfigError(Kind::missing_key, source, 0, "mass_kg", "is required for channel = translation");
    return cfg;
}

} // namespace optolever

#endif // OPTOLEVER_CONFIG_HPP
