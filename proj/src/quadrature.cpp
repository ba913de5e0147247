#include "pointlab/quadrature.hpp"

namespace pointlab::quad {

GaussRule gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

GaussRule gauss_chebyshev_second(int n)
{
    if (n < 1) throw std::invalid_argument("Gauss-Chebyshev order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int k = 1; k <= n; ++k) {
        const double a = k * kPi / (n + 1);
        const double s = std::sin(a);
        rule.nodes[n - k] = std::cos(a);
        rule.weights[n - k] = kPi / (n + 1) * s * s;
    }
    return rule;
}

double sphere_measure(int d)
{
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * kPi;
        case 3: return 4.0 * kPi;
        case 4: return 2.0 * kPi * kPi;
        case 5: return 8.0 * kPi * kPi / 3.0;
        default: throw std::invalid_argument("sphere measure supported for d = 1..5");
    }
}

double radial_ball_integral(const std::function<double(double)>& f, int d, double radius, const QuadratureSpec& spec)
{
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
    spec.validate();
    const double omega = sphere_measure(d);
    const double radial = integrate_radial_log([&](double r) { return f(r) * std::pow(r, d - 1); }, radius, spec);
    if (!std::isfinite(radial)) throw QuadratureFailure("radial integral is not finite");
    return omega * radial;
}

SphereRule3 sphere_rule3(const Point3& axis, double cos_lo, double cos_hi, int order, bool axisymmetric)
{
    const double len = axis.norm();
    if (!(len > 0.0)) throw std::invalid_argument("sphere rule axis must be nonzero");
    const Point3 e3 = (1.0 / len) * axis;
    const Point3 seed = std::abs(e3[0]) < 0.9 ? Point3{1.0, 0.0, 0.0} : Point3{0.0, 1.0, 0.0};
    Point3 e1 = seed - dot(seed, e3) * e3;
    e1 = (1.0 / e1.norm()) * e1;
    const Point3 e2{e3[1] * e1[2] - e3[2] * e1[1], e3[2] * e1[0] - e3[0] * e1[2], e3[0] * e1[1] - e3[1] * e1[0]};

    SphereRule3 rule;
    cos_lo = std::clamp(cos_lo, -1.0, 1.0);
    cos_hi = std::clamp(cos_hi, -1.0, 1.0);
    if (!(cos_hi > cos_lo)) return rule;
    const GaussRule gl = gauss_legendre(order);
    const int n_az = axisymmetric ? 1 : 2 * order;
    const double half = 0.5 * (cos_hi - cos_lo);
    const double mid = 0.5 * (cos_hi + cos_lo);
    rule.directions.reserve(std::size_t(gl.size()) * n_az);
    rule.weights.reserve(std::size_t(gl.size()) * n_az);
    for (int i = 0; i < gl.size(); ++i) {
        const double t = mid + half * gl.nodes[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (int j = 0; j < n_az; ++j) {
            const double phi = (2.0 * kPi * j) / n_az;
            const double cp = std::cos(phi), sp = std::sin(phi);
            rule.directions.push_back(t * e3 + (st * cp) * e1 + (st * sp) * e2);
            rule.weights.push_back(half * gl.weights[i] * 2.0 * kPi / n_az);
        }
    }
    return rule;
}

SphereRuleN sphere_rule(int d, int order)
{
    if (d < 1 || d > 5) throw std::invalid_argument("sphere rule supported for d = 1..5");
    SphereRuleN rule;
    rule.dim = d;
    if (d == 1) {
        rule.points = {-1.0, 1.0};
        rule.weights = {1.0, 1.0};
        return rule;
    }
    if (d == 2) {
        const int n = 2 * order;
        for (int j = 0; j < n; ++j) {
            const double phi = (2.0 * kPi * j) / n;
            rule.points.push_back(std::cos(phi));
            rule.points.push_back(std::sin(phi));
            rule.weights.push_back(2.0 * kPi / n);
        }
        return rule;
    }
    // First coordinate t = cos(chi) carries the weight (1 - t^2)^{(d-3)/2}.
    GaussRule polar;
    if (d == 4) {
        polar = gauss_chebyshev_second(order);
    } else {
        polar = gauss_legendre(order);
        if (d == 5)
            for (int i = 0; i < polar.size(); ++i) polar.weights[i] *= 1.0 - polar.nodes[i] * polar.nodes[i];
    }
    const SphereRuleN sub = sphere_rule(d - 1, order);
    for (int i = 0; i < polar.size(); ++i) {
        const double t = polar.nodes[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (std::size_t j = 0; j < sub.size(); ++j) {
            rule.points.push_back(t);
            for (double v : sub.point(j)) rule.points.push_back(st * v);
            rule.weights.push_back(polar.weights[i] * sub.weights[j]);
        }
    }
    return rule;
}

}  // namespace pointlab::quad
