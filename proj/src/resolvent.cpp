#include "pointlab/resolvent.hpp"

#include <algorithm>

#include "pointlab/quadrature.hpp"

namespace pointlab::resolvent {

namespace {
const Complex kI(0.0, 1.0);
}

Complex free_resolvent_kernel(ComplexFrequency lambda, const Point3& x, const Point3& y)
{
    const double r = distance(x, y);
    if (r == 0.0) throw SingularityError("free resolvent kernel is singular on the diagonal x = y");
    return std::exp(kI * lambda.value() * r) / (kFourPi * r);
}

Complex b_coefficient(double mu, ComplexFrequency lambda)
{
    const Complex shifted = lambda.value() + kI * mu;
    if (shifted == Complex(0.0, 0.0)) throw PoleError("b(mu, lambda) has its pole at lambda = -i mu");
    return kI / (kFourPi * shifted);
}

Complex extra_part_times_pole_factor(ComplexFrequency lambda, const Point3& x, const Point3& y)
{
    const double rx = x.norm();
    const double ry = y.norm();
    if (rx == 0.0 || ry == 0.0) throw SingularityError("extra kernel is singular at the origin");
    return kI * std::exp(kI * lambda.value() * (rx + ry)) / (kFourPi * rx * ry);
}

ResolventKernelValue resolvent_kernel(const ExtensionParameter& param, ComplexFrequency lambda, const Point3& x,
                                      const Point3& y)
{
    ResolventKernelValue v{};
    v.free_part = free_resolvent_kernel(lambda, x, y);
    if (param.is_finite()) {
        const double rx = x.norm();
        const double ry = y.norm();
        if (rx == 0.0 || ry == 0.0) throw SingularityError("extra kernel is singular at the origin");
        const Complex b = b_coefficient(param.mu(), lambda);
        v.extra_part = b * std::exp(kI * lambda.value() * (rx + ry)) / (rx * ry);
    }
    v.total = v.free_part + v.extra_part;
    return v;
}

std::optional<PoleInfo> pole_location(const ExtensionParameter& param)
{
    if (param.is_friedrichs()) return std::nullopt;
    const double mu = param.mu();
    return PoleInfo{-kI * mu, mu < 0.0 ? PoleKind::EigenvalueType : PoleKind::Resonance};
}

// ---------------------------------------------------------------------------

namespace {

// Composite Gauss-Legendre over consecutive breakpoints.
template <class F>
Complex integrate_breakpoints(F&& g, const std::vector<double>& cuts, const quad::GaussRule& rule, int panels)
{
    Complex s{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) s += quad::fixed_panels(g, cuts[i], cuts[i + 1], panels, rule);
    return s;
}

}  // namespace

Complex apply_resolvent(const ExtensionParameter& param, ComplexFrequency lambda, const SourceField& f,
                        const Point3& x, const QuadratureSpec& spec)
{
    spec.validate();
    if (lambda.half_plane() != HalfPlane::Upper) throw DomainError("apply_resolvent requires Im(lambda) > 0");
    if (!f.value) return {};
    if (param.is_finite() && x.is_origin()) throw SingularityError("resolvent of L^mu is singular at x = 0");
    const Complex lam = lambda.value();
    const double rx = x.norm();
    const Complex b = param.is_finite() ? b_coefficient(param.mu(), lambda) : Complex{};
    const double w = f.radius;
    const Point3 to_centre = f.center - x;
    const double d = to_centre.norm();
    const quad::GaussRule radial = quad::gauss_legendre(spec.radial_order);
    constexpr int kPanels = 2;

    auto extra = [&](const Point3& y) -> Complex {
        if (param.is_friedrichs()) return {};
        const double ry = y.norm();
        if (ry == 0.0) return {};
        return b * std::exp(kI * lam * (rx + ry)) / (rx * ry);
    };

    if (d < 1.5 * w) {
        // Spherical coordinates centred at x.
        const Point3 axis = d > 0.0 ? to_centre : Point3{0.0, 0.0, 1.0};
        auto shell = [&](double r) -> Complex {
            if (r <= 0.0) return {};
            double t_lo = -1.0;
            if (d > 0.0) t_lo = (r * r + d * d - w * w) / (2.0 * r * d);
            if (t_lo >= 1.0) return {};
            const quad::SphereRule3 rule = quad::sphere_rule3(axis, t_lo, 1.0, spec.angular_order, false);
            const Complex radial_free = std::exp(kI * lam * r) * r / kFourPi;
            Complex s{};
            for (std::size_t i = 0; i < rule.weights.size(); ++i) {
                const Point3 y = x + r * rule.directions[i];
                const double fy = f.value(y);
                if (fy == 0.0) continue;
                s += rule.weights[i] * fy * (radial_free + extra(y) * r * r);
            }
            return s;
        };
        std::vector<double> cuts{std::max(0.0, d - w)};
        if (d < w) cuts.push_back(w - d);
        cuts.push_back(d + w);
        std::sort(cuts.begin(), cuts.end());
        return integrate_breakpoints(shell, cuts, radial, kPanels);
    }

    // Spherical coordinates centred at the support centre.
    const quad::SphereRule3 rule = quad::sphere_rule3(x - f.center, -1.0, 1.0, spec.angular_order, false);
    auto shell = [&](double rho) -> Complex {
        Complex s{};
        for (std::size_t i = 0; i < rule.weights.size(); ++i) {
            const Point3 y = f.center + rho * rule.directions[i];
            const double fy = f.value(y);
            if (fy == 0.0) continue;
            const double r = distance(x, y);
            s += rule.weights[i] * fy * (std::exp(kI * lam * r) / (kFourPi * r) + extra(y));
        }
        return s * rho * rho;
    };
    return integrate_breakpoints(shell, {0.0, w}, radial, kPanels);
}

}  // namespace pointlab::resolvent
