#include "pointlab/core.hpp"

#include <algorithm>
#include <cstdio>

namespace pointlab {

std::string ExtensionParameter::to_string() const
{
    if (is_friedrichs()) return "infinity";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *mu_);
    return buf;
}

ThetaParameter::ThetaParameter(double theta)
{
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
    const double two_pi = 2.0 * kPi;
    double t = theta;
    if (t < -kPi || t >= kPi) {
        t -= two_pi * std::floor((t + kPi) / two_pi);
        if (t >= kPi) t -= two_pi;
        if (t < -kPi) t = -kPi;
    }
    theta_ = t;
}

ComplexFrequency::ComplexFrequency(Complex lambda) : lambda_(lambda)
{
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw std::invalid_argument("frequency must be finite");
}

HalfPlane ComplexFrequency::half_plane() const
{
    if (lambda_.imag() > 0.0) return HalfPlane::Upper;
    if (lambda_.imag() < 0.0) return HalfPlane::Lower;
    return HalfPlane::RealAxis;
}

// ---------------------------------------------------------------------------

namespace {

// Transition on the unit band u in (1/2, 1): phi = 1 / (1 + exp(g)),
// g(u) = 1/(1-u) - 1/(u-1/2), the ratio exp(-1/(u-1/2)) / exp(-1/(1-u)).
struct UnitBand {
    double value, d1, d2;
};

UnitBand unit_band(double u)
{
    if (u <= 0.5) return {1.0, 0.0, 0.0};
    if (u >= 1.0) return {0.0, 0.0, 0.0};
    const double a = 1.0 - u;
    const double b = u - 0.5;
    const double g = 1.0 / a - 1.0 / b;
    if (std::abs(g) > 700.0) return {g > 0.0 ? 0.0 : 1.0, 0.0, 0.0};
    const double e = std::exp(-std::abs(g));
    const double sigma = g > 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
    const double p = e / ((1.0 + e) * (1.0 + e));  // sigma (1 - sigma)
    const double g1 = 1.0 / (a * a) + 1.0 / (b * b);
    const double g2 = 2.0 / (a * a * a) - 2.0 / (b * b * b);
    return {sigma, -p * g1, (1.0 - 2.0 * sigma) * p * g1 * g1 - p * g2};
}

}  // namespace

CutoffProfile::CutoffProfile(double inner, double outer)
    : inner_(inner), outer_(outer), stretch_(0.5 / (outer - inner))
{
    if (!(inner > 0.0) || !(outer > inner)) throw std::invalid_argument("cutoff needs 0 < inner < outer");
}

double CutoffProfile::value(double s) const { return unit_band(0.5 + (s - inner_) * stretch_).value; }
double CutoffProfile::d1(double s) const { return stretch_ * unit_band(0.5 + (s - inner_) * stretch_).d1; }
double CutoffProfile::d2(double s) const
{
    return stretch_ * stretch_ * unit_band(0.5 + (s - inner_) * stretch_).d2;
}

double CutoffProfile::max_abs_d1() const
{
    double m = 0.0;
    constexpr int n = 20000;
    for (int i = 1; i < n; ++i) m = std::max(m, std::abs(d1(inner_ + (outer_ - inner_) * i / n)));
    return m;
}

double CutoffProfile::max_abs_d2() const
{
    double m = 0.0;
    constexpr int n = 20000;
    for (int i = 1; i < n; ++i) m = std::max(m, std::abs(d2(inner_ + (outer_ - inner_) * i / n)));
    return m;
}

CutoffProfile make_standard_cutoff() { return CutoffProfile(0.5, 1.0); }

// ---------------------------------------------------------------------------

void QuadratureSpec::validate() const
{
    if (radial_order < 1 || angular_order < 1 || subdivision_depth < 1)
        throw std::invalid_argument("quadrature orders must be >= 1");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be > 0");
    if (!(truncation_radius > 0.0)) throw std::invalid_argument("truncation radius must be > 0");
}

QuadratureSpec QuadratureSpec::fast()
{
    QuadratureSpec s;
    s.radial_order = 16;
    s.angular_order = 16;
    s.subdivision_depth = 32;
    s.abs_tol = 1e-10;
    s.rel_tol = 1e-8;
    return s;
}

QuadratureSpec QuadratureSpec::standard() { return QuadratureSpec{}; }

QuadratureSpec QuadratureSpec::strict()
{
    QuadratureSpec s;
    s.radial_order = 32;
    s.angular_order = 48;
    s.subdivision_depth = 60;
    s.abs_tol = 1e-15;
    s.rel_tol = 1e-13;
    return s;
}

QuadratureSpec QuadratureSpec::preset(const std::string& name)
{
    if (name == "fast") return fast();
    if (name == "default") return standard();
    if (name == "strict") return strict();
    throw std::invalid_argument("unknown quadrature preset '" + name + "'");
}

void SampledField::validate() const
{
    if (points.size() != values.size()) throw std::invalid_argument("sampled field: one value per grid point");
    std::vector<std::array<double, 3>> sorted;
    sorted.reserve(points.size());
    for (const auto& p : points) sorted.push_back(p.c);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("sampled field: grid points must be distinct");
}

}  // namespace pointlab
