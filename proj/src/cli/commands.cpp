#include "pointlab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pointlab/cli/format.hpp"
#include "pointlab/closure.hpp"
#include "pointlab/oracle.hpp"
#include "pointlab/parallel.hpp"
#include "pointlab/parametrization.hpp"
#include "pointlab/propagator.hpp"
#include "pointlab/resolvent.hpp"
#include "pointlab/simd/kernels.hpp"
#include "pointlab/spectrum.hpp"

namespace pointlab::cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string num(double v) { return format_number(v); }

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string render(const ExtensionParameter& p) { return p.is_friedrichs() ? "inf" : num(p.mu()); }

// Table rendered as CSV or JSON (an array of row objects with string cells).
std::string emit_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                       const std::string& format, const char* key = "rows")
{
    if (format == "csv") {
        CsvTable t(header);
        for (const auto& r : rows) t.add_row(r);
        return t.str();
    }
    ojson list = ojson::array();
    for (const auto& r : rows) {
        ojson o;
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
        list.push_back(std::move(o));
    }
    ojson doc;
    doc[key] = std::move(list);
    return dump(doc);
}

}  // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"parametrize", "resolvent", "spectrum", "wave", "verify", "closure"};
    return names;
}

CommandResult run_command(const std::string& name, const json& config, const std::optional<std::string>& preset)
{
    if (name == "parametrize") return cmd_parametrize(config, preset);
    if (name == "resolvent") return cmd_resolvent(config, preset);
    if (name == "spectrum") return cmd_spectrum(config, preset);
    if (name == "wave") return cmd_wave(config, preset);
    if (name == "verify") return cmd_verify(config, preset);
    if (name == "closure") return cmd_closure(config, preset);
    throw ConfigError("unknown command '" + name + "'");
}

// ---------------------------------------------------------------------------
// parametrize

CommandResult cmd_parametrize(const json& config, const std::optional<std::string>&)
{
    const std::string format = parse_format(config, "csv");
    std::vector<double> thetas;
    if (config.contains("theta_grid")) {
        const int n = as_int(require(config.at("theta_grid"), "count"), "theta_grid.count");
        if (n < 1) throw ConfigError("'theta_grid.count' must be >= 1");
        for (int k = 0; k < n; ++k) thetas.push_back(-kPi + (k + 0.5) * 2.0 * kPi / n);
    }
    if (config.contains("theta")) {
        for (double t : parse_samples(config.at("theta"), "theta")) thetas.push_back(t);
    }
    std::vector<double> mus;
    if (config.contains("mu")) mus = parse_samples(config.at("mu"), "mu");
    if (thetas.empty() && mus.empty()) throw ConfigError("parametrize needs 'theta_grid', 'theta' or 'mu'");

    std::vector<std::vector<std::string>> rows;
    for (double t : thetas) {
        const ThetaParameter theta(t);
        const ExtensionParameter p = parametrization::theta_to_mu(theta);
        std::string cre, cim;
        if (p.is_finite()) {
            const Complex c = parametrization::theta_to_mu_complex_form(theta);
            cre = num(c.real());
            cim = num(c.imag());
        }
        rows.push_back({num(theta.value()), render(p), cre, cim, num(parametrization::mu_to_theta(p).value())});
    }
    for (double m : mus) {
        const ExtensionParameter p = ExtensionParameter::finite(m);
        const ThetaParameter theta = parametrization::mu_to_theta(p);
        const Complex c = parametrization::theta_to_mu_complex_form(theta);
        rows.push_back({num(theta.value()), num(m), num(c.real()), num(c.imag()), num(theta.value())});
    }
    CommandResult r;
    r.output = emit_table({"theta", "mu", "mu_complex_re", "mu_complex_im", "theta_roundtrip"}, rows, format);
    return r;
}

// ---------------------------------------------------------------------------
// resolvent

CommandResult cmd_resolvent(const json& config, const std::optional<std::string>&)
{
    const std::string format = parse_format(config, "csv");
    const ExtensionParameter param = parse_parameter(config);
    const Complex lambda = parse_complex(require(config, "lambda"), "lambda");
    const Point3 y = parse_point(require(config, "y"), "y");
    const std::vector<Point3> pts = parse_grid(require(config, "grid"));
    const std::size_t n = pts.size();

    std::vector<double> x1(n), x2(n), x3(n), rf(n), jf(n), re(n), je(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = pts[i][0];
        x2[i] = pts[i][1];
        x3[i] = pts[i][2];
    }
    const bool pole = param.is_finite() && lambda + Complex(0.0, param.mu()) == Complex{};
    const simd::Backend backend = simd::active_backend();
    const simd::PointsSoA soa{x1, x2, x3};
    if (pole) {
        // Free part only; the extra part is undefined at the pole.
        simd::resolvent_kernel_batch(backend, ExtensionParameter::friedrichs(), lambda, y, soa, {rf, jf, re, je});
    } else {
        simd::resolvent_kernel_batch(backend, param, lambda, y, soa, {rf, jf, re, je});
    }

    std::vector<std::vector<std::string>> rows;
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::string flag;
        auto cell = [](double v) { return std::isnan(v) ? std::string() : num(v); };
        std::string c_rf = cell(rf[i]), c_jf = cell(jf[i]), c_re = cell(re[i]), c_je = cell(je[i]);
        if (std::isnan(rf[i])) flag = "singular_diagonal";
        if (pole) {
            flag += flag.empty() ? "pole" : "|pole";
            c_re.clear();
            c_je.clear();
        } else if (std::isnan(re[i])) {
            flag += flag.empty() ? "singular_origin" : "|singular_origin";
        }
        if (!flag.empty()) ++flagged;
        rows.push_back({num(pts[i][0]), num(pts[i][1]), num(pts[i][2]), c_rf, c_jf, c_re, c_je, flag});
    }
    CommandResult r;
    r.output = emit_table({"x1", "x2", "x3", "re_free", "im_free", "re_extra", "im_extra", "flag"}, rows, format);
    r.diagnostics.push_back("resolvent: " + std::to_string(n) + " points, " + std::to_string(flagged) +
                            " flagged (warnings), backend " + simd::backend_name(backend));
    return r;
}

// ---------------------------------------------------------------------------
// spectrum

CommandResult cmd_spectrum(const json& config, const std::optional<std::string>& preset)
{
    const std::string format = parse_format(config, "json");
    const QuadratureSpec spec = parse_quadrature(config, preset);
    std::vector<ExtensionParameter> params;
    if (config.contains("parameters")) {
        const json& list = config.at("parameters");
        if (!list.is_array() || list.empty()) throw ConfigError("'parameters' must be a nonempty array");
        for (const auto& p : list) params.push_back(parse_parameter(p));
    } else {
        params.push_back(parse_parameter(config));
    }
    const bool norm_check = config.value("norm_check", true);

    std::vector<std::vector<std::string>> rows;
    for (const auto& p : params) {
        const spectrum::SpectralData d = spectrum::spectrum_of(p);
        const auto pole = resolvent::pole_location(p);
        std::string eig, res_re, res_im, kind = "none", nq, nc;
        if (!d.eigenvalues.empty()) eig = num(d.eigenvalues.front());
        if (d.resonance) {
            res_re = num(d.resonance->real());
            res_im = num(d.resonance->imag());
        }
        if (pole) kind = pole->kind == resolvent::PoleKind::EigenvalueType ? "eigenvalue" : "resonance";
        if (norm_check && p.is_finite() && p.mu() < 0.0) {
            nq = num(spectrum::eigenfunction_norm_sq_unnormalized(p.mu(), spec));
            nc = num(-2.0 * kPi / p.mu());
        }
        rows.push_back({render(p), eig, "[0, inf)", res_re, res_im, kind, nq, nc});
    }
    CommandResult r;
    r.output = emit_table({"mu", "eigenvalue", "essential_spectrum", "resonance_re", "resonance_im", "pole_kind",
                           "norm_sq_quadrature", "norm_sq_closed_form"},
                          rows, format, "spectra");
    return r;
}

// ---------------------------------------------------------------------------
// wave

namespace {

bool outside_all_cones(const propagator::CauchyData& d, double t, const Point3& x)
{
    bool any = false;
    for (const auto* f : {&d.f, &d.g}) {
        if (f->empty()) continue;
        any = true;
        if (!propagator::outside_light_cones(f->support, t, x)) return false;
    }
    return any;
}

double data_scale(const json& data_cfg)
{
    double m = 0.0;
    for (const char* key : {"f", "g"}) {
        if (!data_cfg.contains(key) || data_cfg.at(key).is_null()) continue;
        const json& f = data_cfg.at(key);
        m = std::max(m, std::abs(f.contains("amplitude") ? f.at("amplitude").get<double>() : 1.0));
    }
    return m;
}

}  // namespace

CommandResult cmd_wave(const json& config, const std::optional<std::string>& preset)
{
    const std::string format = parse_format(config, "csv");
    const QuadratureSpec spec = parse_quadrature(config, preset);
    const ExtensionParameter param = parse_parameter(config);
    const json& data_cfg = require(config, "data");
    propagator::CauchyData data;
    if (data_cfg.contains("f")) data.f = parse_data_field(data_cfg.at("f"), "data.f");
    if (data_cfg.contains("g")) data.g = parse_data_field(data_cfg.at("g"), "data.g");
    if (data.f.empty() && data.g.empty()) throw ConfigError("'data' needs at least one of 'f' and 'g'");
    const std::vector<double> times = parse_samples(require(config, "times"), "times");
    for (double t : times)
        if (t < 0.0) throw ConfigError("'times' must be >= 0");
    const std::vector<Point3> pts = parse_grid(require(config, "grid"));
    for (const auto& p : pts)
        if (p.is_origin()) throw ConfigError("wave grid must avoid the origin");

    const std::size_t n = times.size() * pts.size();
    std::vector<propagator::WaveParts> parts(n);
    parallel_for(n, [&](std::size_t k) {
        parts[k] = propagator::wave_solution_parts(param, times[k / pts.size()], data, pts[k % pts.size()], spec);
    });

    std::vector<std::vector<std::string>> rows;
    double outside_max = 0.0;
    std::size_t outside_count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = times[k / pts.size()];
        const Point3& x = pts[k % pts.size()];
        const auto& w = parts[k];
        if (outside_all_cones(data, t, x)) {
            ++outside_count;
            outside_max = std::max(outside_max, std::abs(w.total()));
        }
        rows.push_back({num(t), num(x[0]), num(x[1]), num(x[2]), num(w.total()), num(w.free), num(w.diffracted)});
    }

    ojson summary;
    summary["parameter"] = render(param);
    summary["data_scale"] = num(data_scale(data_cfg));
    summary["outside_cone_samples"] = std::to_string(outside_count);
    summary["max_abs_u_outside_cones"] = num(outside_max);
    if (config.contains("decay_fit")) {
        const json& fit = config.at("decay_fit");
        const Point3 x = parse_point(require(fit, "x"), "decay_fit.x");
        const std::vector<double> ft = parse_samples(require(fit, "times"), "decay_fit.times");
        if (ft.size() < 2) throw ConfigError("'decay_fit.times' needs at least two samples");
        std::vector<double> v(ft.size());
        parallel_for(ft.size(), [&](std::size_t i) {
            v[i] = propagator::wave_solution_parts(param, ft[i], data, x, spec).diffracted;
        });
        summary["fitted_rate"] = num(propagator::fitted_log_rate(ft, v));
        if (param.is_finite()) summary["expected_rate"] = num(-param.mu());
    }

    const std::vector<std::string> header{"t", "x1", "x2", "x3", "u", "u_free", "u_diffracted"};
    CommandResult r;
    if (format == "csv") {
        r.output = emit_table(header, rows, format);
        r.summary = dump(summary);
    } else {
        ojson doc = ojson::parse(emit_table(header, rows, format, "snapshots"));
        doc["summary"] = summary;
        r.output = dump(doc);
    }
    return r;
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct Check {
    std::string suite;
    std::string name;
    double value;
    double reference;
    double error;
    double tolerance;
    bool pass() const { return std::isfinite(error) && error <= tolerance; }
};

const json& suite_config(const json& config, const std::string& suite)
{
    static const json empty = json::object();
    if (!config.contains(suite)) return empty;
    const json& s = config.at(suite);
    if (!s.is_object()) throw ConfigError("'" + suite + "' settings must be an object");
    return s;
}

double setting(const json& s, const std::string& key, double fallback, const std::string& suite)
{
    return s.contains(key) ? as_number(s.at(key), suite + "." + key) : fallback;
}

std::vector<double> samples_setting(const json& s, const std::string& key, std::vector<double> fallback,
                                    const std::string& suite)
{
    return s.contains(key) ? parse_samples(s.at(key), suite + "." + key) : fallback;
}

std::string label(const std::string& k, double v) { return k + "=" + num(v); }

// Closed-form error measure: relative when the reference is nonzero.
double error_of(const oracle::ReconstructionReport& r) { return r.rel_error ? *r.rel_error : r.abs_error; }

std::vector<Point3> parse_points_setting(const json& s, std::vector<Point3> fallback)
{
    if (!s.contains("points")) return fallback;
    return parse_grid(json{{"points", s.at("points")}});
}

}  // namespace

CommandResult cmd_verify(const json& config, const std::optional<std::string>& preset)
{
    const QuadratureSpec spec = parse_quadrature(config, preset);
    static const std::vector<std::string> known{"fourier", "diffracted", "dirichlet", "residue", "eigen", "residual"};
    std::vector<std::string> suites;
    if (!config.contains("suites")) {
        suites = known;
    } else {
        const json& s = config.at("suites");
        if (!s.is_array() || s.empty()) throw ConfigError("'suites' must be a nonempty array of names");
        for (const auto& e : s) {
            const std::string name = as_string(e, "suites[]");
            if (name == "all") {
                suites = known;
                break;
            }
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw ConfigError("unknown suite '" + name + "'");
            suites.push_back(name);
        }
    }
    const std::vector<double> mus = config.contains("mu_values") ? parse_samples(config.at("mu_values"), "mu_values")
                                                                   : std::vector<double>{-1.0, 0.0, 1.0};

    std::vector<Check> checks;
    std::vector<std::string> notes;
    for (const std::string& suite : suites) {
        const json& s = suite_config(config, suite);
        try {
            if (suite == "fourier") {
                const double tol = setting(s, "tolerance", 1e-5, suite);
                std::vector<Complex> lambdas{1.0, 2.0, std::polar(1.0, kPi / 4), std::polar(1.0, -kPi / 4)};
                if (s.contains("lambdas")) {
                    lambdas.clear();
                    for (const auto& l : s.at("lambdas")) lambdas.push_back(parse_complex(l, "fourier.lambdas"));
                }
                for (const Complex& l : lambdas)
                    for (double r : samples_setting(s, "radii", {0.5, 1.0, 2.0}, suite)) {
                        const auto rep = oracle::fourier_radial_check(l, r, spec);
                        checks.push_back({suite, label("re_lambda", l.real()) + " " + label("im_lambda", l.imag()) + " " + label("r", r),
                                          std::abs(rep.reconstructed), std::abs(rep.closed_form), error_of(rep), tol});
                    }
            } else if (suite == "diffracted") {
                const double tol = setting(s, "tolerance", 1e-3, suite);
                const double R = setting(s, "R", 1e4, suite);
                const Point3 x = s.contains("x") ? parse_point(s.at("x"), "diffracted.x") : Point3{1.0, 0.0, 0.0};
                const Point3 y = s.contains("y") ? parse_point(s.at("y"), "diffracted.y") : Point3{0.0, 1.0, 0.0};
                for (double mu : mus)
                    for (double t : samples_setting(s, "t_values", {1.0, 3.0, 4.0}, suite)) {
                        const auto rep = oracle::reconstruct_diffracted_kernel(mu, t, x, y, R, spec);
                        checks.push_back({suite, label("mu", mu) + " " + label("t", t) + " " + label("R", R),
                                          rep.reconstructed.real(), rep.closed_form.real(), error_of(rep), tol});
                    }
            } else if (suite == "dirichlet") {
                const double tol = setting(s, "tolerance", 1e-3, suite);
                const double R = setting(s, "R", 1e4, suite);
                for (double a : samples_setting(s, "a_values", {1.0, -1.0, 0.0}, suite)) {
                    const auto rep = oracle::dirichlet_integral_check(a, R, spec);
                    checks.push_back({suite, label("a", a) + " " + label("R", R), rep.reconstructed.real(),
                                      rep.closed_form.real(), rep.abs_error, tol});
                }
            } else if (suite == "residue") {
                const double tol = setting(s, "tolerance", 1e-8, suite);
                for (double mu : mus) {
                    if (mu == 0.0) continue;
                    for (double sv : samples_setting(s, "s_values", {-1.0, 2.0}, suite)) {
                        const auto rep = oracle::residue_check(mu, sv, spec);
                        checks.push_back({suite, label("mu", mu) + " " + label("s", sv), std::abs(rep.reconstructed),
                                          std::abs(rep.closed_form), rep.abs_error, tol});
                    }
                }
            } else if (suite == "eigen") {
                const double tol = setting(s, "tolerance", 1e-8, suite);
                for (double mu : mus) {
                    if (!(mu < 0.0)) continue;
                    const double q = spectrum::eigenfunction_norm_sq_unnormalized(mu, spec);
                    const double ref = -2.0 * kPi / mu;
                    checks.push_back({suite, label("mu", mu) + " norm_sq", q, ref, std::abs(q - ref) / ref, tol});
                }
            } else if (suite == "residual") {
                const double tol = setting(s, "tolerance", 1e-4, suite);
                const double h = setting(s, "h", 1e-3, suite);
                const Complex lambda = s.contains("lambda") ? parse_complex(s.at("lambda"), "residual.lambda")
                                                            : Complex(1.0, 1.0);
                const std::vector<Point3> pts = parse_points_setting(
                    s, {{1.0, 0.2, -0.3}, {-0.8, 1.1, 0.4}, {0.3, -1.6, 1.2}, {2.0, 1.0, -1.5}});
                for (double mu : mus) {
                    oracle::ResidualProblem pb;
                    pb.kind = oracle::ResidualKind::Resolvent;
                    pb.parameter = ExtensionParameter::finite(mu);
                    pb.lambda = lambda;
                    const auto sum = oracle::pde_residual_sweep(pb, pts, h);
                    checks.push_back({suite, label("mu", mu) + " resolvent max", sum.max, 0.0, sum.max, tol});
                    if (mu < 0.0) {
                        pb.kind = oracle::ResidualKind::Eigen;
                        const auto es = oracle::pde_residual_sweep(pb, pts, h);
                        checks.push_back({suite, label("mu", mu) + " eigen max", es.max, 0.0, es.max, tol});
                    }
                }
            }
        } catch (const Error& e) {
            checks.push_back({suite, std::string("error: ") + e.what(), std::nan(""), std::nan(""), std::nan(""), 0.0});
        } catch (const std::invalid_argument& e) {
            throw ConfigError(suite + ": " + e.what());
        }
    }

    ojson list = ojson::array();
    std::size_t failed = 0;
    for (const auto& c : checks) {
        ojson o;
        o["suite"] = c.suite;
        o["name"] = c.name;
        o["value"] = num(c.value);
        o["reference"] = num(c.reference);
        o["error"] = num(c.error);
        o["tolerance"] = num(c.tolerance);
        o["pass"] = c.pass();
        if (!c.pass()) ++failed;
        list.push_back(std::move(o));
    }
    ojson doc;
    doc["checks"] = std::move(list);
    doc["passed"] = std::to_string(checks.size() - failed);
    doc["failed"] = std::to_string(failed);
    doc["all_pass"] = failed == 0;
    CommandResult r;
    r.output = dump(doc);
    r.exit_code = failed == 0 ? kExitOk : kExitVerificationFailure;
    if (failed) r.diagnostics.push_back("verify: " + std::to_string(failed) + " check(s) failed");
    return r;
}

// ---------------------------------------------------------------------------
// closure

CommandResult cmd_closure(const json& config, const std::optional<std::string>& preset)
{
    const std::string format = parse_format(config, "csv");
    const QuadratureSpec spec = parse_quadrature(config, preset);
    const std::vector<double> eps = config.contains("eps") ? parse_samples(config.at("eps"), "eps")
                                                           : std::vector<double>{0.2, 0.1, 0.05};
    for (double e : eps)
        if (!(e > 0.0 && e < 1.0)) throw ConfigError("'eps' values must lie in (0, 1)");
    std::vector<std::string> cases{"D2", "D3", "D4"};
    if (config.contains("cases")) {
        cases.clear();
        for (const auto& c : require(config, "cases")) cases.push_back(as_string(c, "cases[]"));
    }
    auto dims = [&](const char* key, std::vector<int> fallback) {
        if (!config.contains(key)) return fallback;
        std::vector<int> out;
        for (const auto& d : config.at(key)) {
            const int v = as_int(d, key);
            if (v < 1 || v > 5) throw ConfigError(std::string("'") + key + "' entries must be in 1..5");
            out.push_back(v);
        }
        return out;
    };
    const std::vector<int> naive_dims = dims("naive_dims", {4, 5});
    const std::vector<int> tailored_dims = dims("tailored_dims", {4});

    std::vector<std::vector<std::string>> rows;
    for (const std::string& name : cases) {
        closure::RadialCase c;
        if (name == "D2") c = closure::RadialCase::D2;
        else if (name == "D3") c = closure::RadialCase::D3;
        else if (name == "D4") c = closure::RadialCase::D4;
        else throw ConfigError("unknown closure case '" + name + "'");
        for (double e : eps) {
            const double v = closure::closure_radial_integral(c, e, spec);
            const double cf = closure::closure_radial_closed_form(c, e);
            rows.push_back({name, num(e), num(v), num(cf), num(std::abs(v - cf))});
        }
    }
    // Naive rows: the closed-form column is the eps^{d-4} scaling from the first eps.
    for (int d : naive_dims) {
        double first = 0.0;
        for (std::size_t i = 0; i < eps.size(); ++i) {
            const double v = closure::cutoff_l2_laplacian_norm(closure::CutoffFamilyKind::Naive, d, eps[i], spec);
            if (i == 0) first = v;
            const double scaled = first * std::pow(eps[i] / eps[0], d - 4);
            rows.push_back({"naive_d" + std::to_string(d), num(eps[i]), num(v), num(scaled),
                            num(std::abs(v - scaled) / std::abs(scaled))});
        }
    }
    for (int d : tailored_dims)
        for (double e : eps) {
            const double v = closure::cutoff_l2_laplacian_norm(closure::CutoffFamilyKind::Tailored, d, e, spec);
            rows.push_back({"tailored_d" + std::to_string(d), num(e), num(v), "", ""});
        }
    CommandResult r;
    r.output = emit_table({"case", "eps", "value", "closed_form", "error"}, rows, format);
    return r;
}

}  // namespace pointlab::cli
