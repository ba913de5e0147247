#pragma once

// JSON run configurations. Every parse error is reported as ConfigError and
// maps to exit code 2.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pointlab/core.hpp"
#include "pointlab/propagator.hpp"

namespace pointlab::cli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads and parses a JSON file.
json load_config_file(const std::string& path);

/// Key lookup with a path-qualified error message.
const json& require(const json& obj, const std::string& key);
double as_number(const json& v, const std::string& what);
int as_int(const json& v, const std::string& what);
std::string as_string(const json& v, const std::string& what);

/// {"mu": <number or "infinity">} or {"theta": <number>}; exactly one.
ExtensionParameter parse_parameter(const json& obj);

/// [re, im] or a real number.
Complex parse_complex(const json& v, const std::string& what);

Point3 parse_point(const json& v, const std::string& what);

/// {"points": [[x1,x2,x3], ...]} or {"axes": {"x1": [lo, hi, n], "x2": ..., "x3": ...}}
/// (an axis may also be a single number). Points are ordered x1 fastest.
std::vector<Point3> parse_grid(const json& v);

/// Optional "quadrature" object: {"preset": name, field overrides...}; the
/// command-line preset, when given, replaces the config preset and overrides.
QuadratureSpec parse_quadrature(const json& cfg, const std::optional<std::string>& preset_override);

/// {"kind": "ball", "center": [...], "width": w, "amplitude": a, "power": p}
/// or {"kind": "shell", "inner": r0, "outer": r1, "amplitude": a, "power": p}; null gives an empty field.
propagator::DataField parse_data_field(const json& v, const std::string& what);

/// Real-number list: an array, or {"lo": a, "hi": b, "count": n} with endpoints included.
std::vector<double> parse_samples(const json& v, const std::string& what);

/// "csv" (default) or "json".
std::string parse_format(const json& cfg, const std::string& fallback);

}  // namespace pointlab::cli
