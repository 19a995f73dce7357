#pragma once
// Config loading (key=value or a JSON object), stable number formatting,
// and CSV assembly shared by the command line front end.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "noonabs/biphoton.hpp"
#include "noonabs/errors.hpp"
#include "noonabs/optimize.hpp"

namespace noonabs {

using Json = nlohmann::ordered_json;

// Wide enough to survive a strtod round trip exactly.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline double parse_number(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw DomainError(what + ": '" + text + "' is not a number");
    return v;
}

inline long parse_integer(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw DomainError(what + ": '" + text + "' is not an integer");
    return v;
}

// Axis forms: a plain number, log:MIN:MAX:COUNT, or lin:MIN:MAX:COUNT.
// unit_scale converts the user-facing unit into the internal one.
inline AxisSpec parse_axis(const std::string& text, double unit_scale,
                           const std::string& what) {
    if (text.rfind("log:", 0) == 0 || text.rfind("lin:", 0) == 0) {
        std::vector<std::string> parts;
        std::string token;
        std::istringstream stream(text);
        while (std::getline(stream, token, ':'))
            parts.push_back(token);
        if (parts.size() != 4)
            throw DomainError(what + ": range syntax is log:MIN:MAX:COUNT or lin:MIN:MAX:COUNT");
        const double lo = parse_number(parts[1], what + " min") * unit_scale;
        const double hi = parse_number(parts[2], what + " max") * unit_scale;
        const int n = int(parse_integer(parts[3], what + " count"));
        return parts[0] == "log" ? AxisSpec::log_range(lo, hi, n)
                                 : AxisSpec::linear_range(lo, hi, n);
    }
    return AxisSpec::fixed(parse_number(text, what) * unit_scale);
}

// Flat string map; flags override these values at the CLI.
struct Config {
    std::map<std::string, std::string> values;

    const std::string* find(const std::string& key) const {
        const auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace detail

// Accepts key=value lines ('#' comments) or a single JSON object, so the
// params block of any JSON result can be fed straight back in.
inline Config parse_config_text(const std::string& text) {
    Config cfg;
    const std::string body = detail::trim(text);
    if (!body.empty() && body.front() == '{') {
        Json j;
        try {
            j = Json::parse(body);
        } catch (const Json::parse_error& e) {
            throw DomainError(std::string("config JSON: ") + e.what());
        }
        if (!j.is_object())
            throw DomainError("config JSON must be a single object");
        for (const auto& item : j.items()) {
            const Json& v = item.value();
            if (v.is_number())
                cfg.values[item.key()] = format_g17(v.get<double>());
            else if (v.is_string())
                cfg.values[item.key()] = v.get<std::string>();
            else if (v.is_boolean())
                cfg.values[item.key()] = v.get<bool>() ? "true" : "false";
            else
                throw DomainError("config key '" + item.key() +
                                  "' must be a number, string, or boolean");
        }
        return cfg;
    }
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(line_no) +
                              ": expected key=value");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty())
            throw DomainError("config line " + std::to_string(line_no) +
                              ": empty key");
        cfg.values[key] = value;
    }
    return cfg;
}

inline Config load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file)
        throw DomainError("cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config_text(buffer.str());
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            row += ',';
        row += csv_escape(fields[i]);
    }
    row += '\n';
    return row;
}

// The keys double as the config schema, so results can be replayed.
inline Json setup_to_json(const SetupParams& p) {
    Json j;
    j["sigma_e"] = p.sigma_e;
    j["sigma_o"] = p.sigma_o;
    j["sigma_p"] = p.sigma_p;
    j["length_mm"] = p.length * 1e3;
    j["kappa_f"] = p.kappa_f;
    j["lambda_pump_um"] = p.lambda_pump;
    return j;
}

inline Json cw_setup_to_json(const SetupParams& p) {
    Json j;
    j["sigma_e"] = p.sigma_e;
    j["sigma_o"] = p.sigma_o;
    j["length_mm"] = p.length * 1e3;
    j["lambda_pump_um"] = p.lambda_pump;
    return j;
}

} // namespace noonabs
