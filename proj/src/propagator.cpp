#include "pointlab/propagator.hpp"

#include <algorithm>

#include "pointlab/quadrature.hpp"

namespace pointlab::propagator {

Support Support::ball(const Point3& center, double radius)
{
    if (!(radius > 0.0)) throw std::invalid_argument("ball support needs a positive radius");
    Support s;
    s.kind = Kind::Ball;
    s.center = center;
    s.radius = radius;
    return s;
}

Support Support::shell(double inner, double outer)
{
    if (!(inner >= 0.0) || !(outer > inner)) throw std::invalid_argument("shell support needs 0 <= inner < outer");
    Support s;
    s.kind = Kind::Shell;
    s.inner = inner;
    s.outer = outer;
    return s;
}

double Support::min_origin_distance() const
{
    return kind == Kind::Ball ? std::max(0.0, center.norm() - radius) : inner;
}

double Support::max_origin_distance() const { return kind == Kind::Ball ? center.norm() + radius : outer; }

double Support::distance_from(const Point3& x) const
{
    if (kind == Kind::Ball) return std::max(0.0, distance(x, center) - radius);
    const double r = x.norm();
    if (r < inner) return inner - r;
    if (r > outer) return r - outer;
    return 0.0;
}

DataField make_ball_bump(const Point3& center, double width, double amplitude, int power)
{
    if (power < 1) throw std::invalid_argument("bump power must be >= 1");
    DataField field;
    field.support = Support::ball(center, width);
    field.symmetric = true;
    const double inv_w2 = 1.0 / (width * width);
    field.value = [=](const Point3& y) {
        const double q = (y - center).norm_sq() * inv_w2;
        return q < 1.0 ? amplitude * std::pow(1.0 - q, power) : 0.0;
    };
    field.gradient = [=](const Point3& y) {
        const Point3 rel = y - center;
        const double q = rel.norm_sq() * inv_w2;
        if (q >= 1.0) return Point3{};
        return (-2.0 * amplitude * power * std::pow(1.0 - q, power - 1) * inv_w2) * rel;
    };
    return field;
}

DataField make_shell_bump(double inner, double outer, double amplitude, int power)
{
    if (power < 1) throw std::invalid_argument("bump power must be >= 1");
    DataField field;
    field.support = Support::shell(inner, outer);
    field.symmetric = true;
    const double mid = inner * inner + outer * outer;
    const double span = outer * outer - inner * inner;
    field.value = [=](const Point3& y) {
        const double z = (2.0 * y.norm_sq() - mid) / span;
        return std::abs(z) < 1.0 ? amplitude * std::pow(1.0 - z * z, power) : 0.0;
    };
    field.gradient = [=](const Point3& y) {
        const double z = (2.0 * y.norm_sq() - mid) / span;
        if (std::abs(z) >= 1.0) return Point3{};
        // d/dy (1 - z^2)^p = p (1 - z^2)^{p-1} (-2 z) (4 / span) y
        return (amplitude * power * std::pow(1.0 - z * z, power - 1) * (-2.0 * z) * 4.0 / span) * y;
    };
    return field;
}

// ---------------------------------------------------------------------------

double sine_kernel_regular(const ExtensionParameter& param, double t, const Point3& x, const Point3& y)
{
    if (t < 0.0) throw DomainError("wave kernels are defined for t >= 0 only");
    const double rx = x.norm();
    const double ry = y.norm();
    if (rx == 0.0 || ry == 0.0) throw SingularityError("diffracted wave kernel is singular at the origin");
    if (param.is_friedrichs()) return 0.0;
    const double s = rx + ry;
    const double heaviside = t > s ? 1.0 : (t == s ? 0.5 : 0.0);
    if (heaviside == 0.0) return 0.0;
    return heaviside * std::exp(param.mu() * (s - t)) / (kFourPi * rx * ry);
}

WaveKernelValue sine_kernel(const ExtensionParameter& param, double t, const Point3& x, const Point3& y)
{
    WaveKernelValue v;
    v.regular_part = sine_kernel_regular(param, t, x, y);
    v.singular_support.push_back(distance(x, y));
    if (param.is_finite()) v.singular_support.push_back(x.norm() + y.norm());
    return v;
}

// ---------------------------------------------------------------------------

double sphere_integral(const DataField& field, const Point3& p, double radius, const QuadratureSpec& spec,
                       bool radial_derivative)
{
    if (field.empty()) return 0.0;
    if (radial_derivative && !field.gradient) throw std::invalid_argument("field has no gradient");
    if (radius == 0.0) return radial_derivative ? 0.0 : kFourPi * field.value(p);

    Point3 axis{0.0, 0.0, 1.0};
    double t_lo = -1.0, t_hi = 1.0;
    const Support& sup = field.support;
    if (sup.kind == Support::Kind::Ball) {
        const Point3 rel = sup.center - p;
        const double d = rel.norm();
        if (d > 0.0) {
            axis = rel;
            t_lo = (radius * radius + d * d - sup.radius * sup.radius) / (2.0 * radius * d);
        } else if (radius > sup.radius) {
            return 0.0;
        }
    } else {
        const double d = p.norm();
        if (d > 0.0) {
            axis = p;
            const double base = d * d + radius * radius;
            t_lo = (sup.inner * sup.inner - base) / (2.0 * radius * d);
            t_hi = (sup.outer * sup.outer - base) / (2.0 * radius * d);
        } else if (radius < sup.inner || radius > sup.outer) {
            return 0.0;
        }
    }
    t_lo = std::max(t_lo, -1.0);
    t_hi = std::min(t_hi, 1.0);
    if (!(t_hi > t_lo)) return 0.0;

    const quad::SphereRule3 rule = quad::sphere_rule3(axis, t_lo, t_hi, spec.angular_order, field.symmetric);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
        const Point3& w = rule.directions[i];
        const Point3 y = p + radius * w;
        s += rule.weights[i] * (radial_derivative ? dot(field.gradient(y), w) : field.value(y));
    }
    return s;
}

namespace {

constexpr int kRadialPanels = 4;

void check_inputs(double t, const Point3& x)
{
    if (t < 0.0) throw DomainError("wave propagators are defined for t >= 0 only");
    if (x.is_origin()) throw SingularityError("wave propagators are evaluated away from the origin");
}

// integral over |y| <= t - |x| of e^{mu(|x|+|y|-t)} F(y) / (4 pi |x||y|) dy.
double diffracted_volume(double mu, double t, const DataField& field, const Point3& x, const QuadratureSpec& spec)
{
    const double rx = x.norm();
    const double lo = field.support.min_origin_distance();
    const double hi = std::min(field.support.max_origin_distance(), t - rx);
    if (!(hi > lo)) return 0.0;
    const quad::GaussRule rule = quad::gauss_legendre(spec.radial_order);
    auto radial = [&](double rho) {
        return std::exp(mu * (rx + rho - t)) * rho * sphere_integral(field, Point3{}, rho, spec);
    };
    return quad::fixed_panels(radial, lo, hi, kRadialPanels, rule) / (kFourPi * rx);
}

}  // namespace

WaveParts sine_propagator_parts(const ExtensionParameter& param, double t, const DataField& g, const Point3& x,
                                const QuadratureSpec& spec)
{
    check_inputs(t, x);
    spec.validate();
    WaveParts parts;
    if (g.empty()) return parts;
    parts.free = t * sphere_integral(g, x, t, spec) / kFourPi;
    if (param.is_finite()) parts.diffracted = diffracted_volume(param.mu(), t, g, x, spec);
    return parts;
}

WaveParts cosine_propagator_parts(const ExtensionParameter& param, double t, const DataField& f, const Point3& x,
                                  const QuadratureSpec& spec)
{
    check_inputs(t, x);
    spec.validate();
    WaveParts parts;
    if (f.empty()) return parts;
    // d/dt [t M(t)] = M(t) + t M'(t), M' the mean of the radial derivative.
    parts.free = (sphere_integral(f, x, t, spec) + t * sphere_integral(f, x, t, spec, true)) / kFourPi;
    if (param.is_finite()) {
        const double mu = param.mu();
        const double rx = x.norm();
        const double layer_radius = t - rx;
        double layer = 0.0;
        if (layer_radius > 0.0) layer = layer_radius * sphere_integral(f, Point3{}, layer_radius, spec) / (kFourPi * rx);
        parts.diffracted = layer - mu * diffracted_volume(mu, t, f, x, spec);
    }
    return parts;
}

double apply_sine_propagator(const ExtensionParameter& param, double t, const DataField& g, const Point3& x,
                             const QuadratureSpec& spec)
{
    return sine_propagator_parts(param, t, g, x, spec).total();
}

double apply_cosine_propagator(const ExtensionParameter& param, double t, const DataField& f, const Point3& x,
                               const QuadratureSpec& spec)
{
    return cosine_propagator_parts(param, t, f, x, spec).total();
}

WaveParts wave_solution_parts(const ExtensionParameter& param, double t, const CauchyData& data, const Point3& x,
                              const QuadratureSpec& spec)
{
    const WaveParts c = cosine_propagator_parts(param, t, data.f, x, spec);
    const WaveParts s = sine_propagator_parts(param, t, data.g, x, spec);
    return {c.free + s.free, c.diffracted + s.diffracted};
}

double wave_solution(const ExtensionParameter& param, double t, const CauchyData& data, const Point3& x,
                     const QuadratureSpec& spec)
{
    return wave_solution_parts(param, t, data, x, spec).total();
}

double fitted_log_rate(std::span<const double> t, std::span<const double> v)
{
    if (t.size() != v.size() || t.size() < 2) throw std::invalid_argument("rate fit needs >= 2 paired samples");
    const double n = double(t.size());
    double st = 0, sl = 0, stt = 0, stl = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (v[i] == 0.0) throw DomainError("rate fit: zero sample has no logarithm");
        const double l = std::log(std::abs(v[i]));
        st += t[i];
        sl += l;
        stt += t[i] * t[i];
        stl += t[i] * l;
    }
    return (n * stl - st * sl) / (n * stt - st * st);
}

bool outside_light_cones(const Support& support, double t, const Point3& x)
{
    return support.distance_from(x) > t && x.norm() + support.min_origin_distance() > t;
}

}  // namespace pointlab::propagator
