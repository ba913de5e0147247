#include "pointlab/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "pointlab/parametrization.hpp"

namespace pointlab::cli {

json load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        json j = json::parse(buf.str());
        if (!j.is_object()) throw ConfigError("config root must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
}

const json& require(const json& obj, const std::string& key)
{
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError("missing required key '" + key + "'");
    return obj.at(key);
}

double as_number(const json& v, const std::string& what)
{
    if (!v.is_number()) throw ConfigError("'" + what + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("'" + what + "' must be finite");
    return d;
}

int as_int(const json& v, const std::string& what)
{
    if (!v.is_number_integer()) throw ConfigError("'" + what + "' must be an integer");
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& what)
{
    if (!v.is_string()) throw ConfigError("'" + what + "' must be a string");
    return v.get<std::string>();
}

ExtensionParameter parse_parameter(const json& obj)
{
    const bool has_mu = obj.is_object() && obj.contains("mu");
    const bool has_theta = obj.is_object() && obj.contains("theta");
    if (has_mu == has_theta) throw ConfigError("exactly one of 'mu' and 'theta' must be given");
    if (has_mu) {
        const json& m = obj.at("mu");
        if (m.is_string()) {
            const std::string s = m.get<std::string>();
            if (s == "infinity" || s == "inf") return ExtensionParameter::friedrichs();
            throw ConfigError("'mu' string must be \"infinity\"");
        }
        return ExtensionParameter::finite(as_number(m, "mu"));
    }
    return parametrization::theta_to_mu(ThetaParameter(as_number(obj.at("theta"), "theta")));
}

Complex parse_complex(const json& v, const std::string& what)
{
    if (v.is_number()) return {as_number(v, what), 0.0};
    if (v.is_array() && v.size() == 2) return {as_number(v[0], what + "[0]"), as_number(v[1], what + "[1]")};
    throw ConfigError("'" + what + "' must be a number or [re, im]");
}

Point3 parse_point(const json& v, const std::string& what)
{
    if (!v.is_array() || v.size() != 3) throw ConfigError("'" + what + "' must be a 3-element array");
    return {as_number(v[0], what), as_number(v[1], what), as_number(v[2], what)};
}

namespace {

std::vector<double> parse_axis(const json& v, const std::string& what)
{
    if (v.is_number()) return {as_number(v, what)};
    if (!v.is_array() || v.size() != 3) throw ConfigError("axis '" + what + "' must be a number or [lo, hi, count]");
    const double lo = as_number(v[0], what);
    const double hi = as_number(v[1], what);
    const int n = as_int(v[2], what);
    if (n < 1) throw ConfigError("axis '" + what + "' needs count >= 1");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
    return out;
}

}  // namespace

std::vector<Point3> parse_grid(const json& v)
{
    std::vector<Point3> pts;
    if (v.is_object() && v.contains("points")) {
        const json& list = v.at("points");
        if (!list.is_array()) throw ConfigError("'grid.points' must be an array");
        for (std::size_t i = 0; i < list.size(); ++i) pts.push_back(parse_point(list[i], "grid.points"));
    } else if (v.is_object() && v.contains("axes")) {
        const json& ax = v.at("axes");
        const auto a1 = parse_axis(require(ax, "x1"), "x1");
        const auto a2 = parse_axis(require(ax, "x2"), "x2");
        const auto a3 = parse_axis(require(ax, "x3"), "x3");
        for (double z : a3)
            for (double y : a2)
                for (double x : a1) pts.push_back({x, y, z});
    } else {
        throw ConfigError("'grid' needs 'points' or 'axes'");
    }
    if (pts.empty()) throw ConfigError("grid is empty");
    return pts;
}

QuadratureSpec parse_quadrature(const json& cfg, const std::optional<std::string>& preset_override)
{
    try {
        if (preset_override) return QuadratureSpec::preset(*preset_override);
        QuadratureSpec spec;
        if (!cfg.contains("quadrature")) return spec;
        const json& q = cfg.at("quadrature");
        if (!q.is_object()) throw ConfigError("'quadrature' must be an object");
        if (q.contains("preset")) spec = QuadratureSpec::preset(as_string(q.at("preset"), "quadrature.preset"));
        if (q.contains("radial_order")) spec.radial_order = as_int(q.at("radial_order"), "radial_order");
        if (q.contains("angular_order")) spec.angular_order = as_int(q.at("angular_order"), "angular_order");
        if (q.contains("truncation_radius"))
            spec.truncation_radius = as_number(q.at("truncation_radius"), "truncation_radius");
        if (q.contains("subdivision_depth"))
            spec.subdivision_depth = as_int(q.at("subdivision_depth"), "subdivision_depth");
        if (q.contains("abs_tol")) spec.abs_tol = as_number(q.at("abs_tol"), "abs_tol");
        if (q.contains("rel_tol")) spec.rel_tol = as_number(q.at("rel_tol"), "rel_tol");
        spec.validate();
        return spec;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("quadrature: ") + e.what());
    }
}

propagator::DataField parse_data_field(const json& v, const std::string& what)
{
    if (v.is_null()) return {};
    if (!v.is_object()) throw ConfigError("'" + what + "' must be an object or null");
    const std::string kind = as_string(require(v, "kind"), what + ".kind");
    const double amp = v.contains("amplitude") ? as_number(v.at("amplitude"), what + ".amplitude") : 1.0;
    const int power = v.contains("power") ? as_int(v.at("power"), what + ".power") : 8;
    try {
        if (kind == "ball")
            return propagator::make_ball_bump(parse_point(require(v, "center"), what + ".center"),
                                              as_number(require(v, "width"), what + ".width"), amp, power);
        if (kind == "shell")
            return propagator::make_shell_bump(as_number(require(v, "inner"), what + ".inner"),
                                               as_number(require(v, "outer"), what + ".outer"), amp, power);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    }
    throw ConfigError("'" + what + ".kind' must be \"ball\" or \"shell\"");
}

std::vector<double> parse_samples(const json& v, const std::string& what)
{
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(as_number(v, what));
    } else if (v.is_array()) {
        for (const auto& e : v) out.push_back(as_number(e, what));
    } else if (v.is_object()) {
        const double lo = as_number(require(v, "lo"), what + ".lo");
        const double hi = as_number(require(v, "hi"), what + ".hi");
        const int n = as_int(require(v, "count"), what + ".count");
        if (n < 1) throw ConfigError("'" + what + ".count' must be >= 1");
        for (int k = 0; k < n; ++k) out.push_back(n == 1 ? lo : lo + (hi - lo) * k / (n - 1));
    } else {
        throw ConfigError("'" + what + "' must be a number, an array or {lo, hi, count}");
    }
    if (out.empty()) throw ConfigError("'" + what + "' is empty");
    return out;
}

std::string parse_format(const json& cfg, const std::string& fallback)
{
    if (!cfg.contains("format")) return fallback;
    const std::string f = as_string(cfg.at("format"), "format");
    if (f != "csv" && f != "json") throw ConfigError("'format' must be \"csv\" or \"json\"");
    return f;
}

}  // namespace pointlab::cli
