#include "pointlab/parametrization.hpp"

#include <algorithm>

#include "pointlab/quadrature.hpp"

namespace pointlab::parametrization {

namespace {
const double kSqrtHalf = std::sqrt(0.5);
}

ExtensionParameter theta_to_mu(ThetaParameter theta)
{
    if (theta.is_friedrichs_point()) return ExtensionParameter::friedrichs();
    // tan(a) - 1 = sqrt(2) sin(a - pi/4) / cos(a): exact zero at theta = pi/2.
    const double half = 0.5 * theta.value();
    return ExtensionParameter::finite(std::sin(half - 0.25 * kPi) / std::cos(half));
}

ThetaParameter mu_to_theta(const ExtensionParameter& param)
{
    if (param.is_friedrichs()) return ThetaParameter(-kPi);
    return ThetaParameter(2.0 * std::atan(std::sqrt(2.0) * param.mu() + 1.0));
}

Complex theta_to_mu_complex_form(ThetaParameter theta)
{
    if (theta.is_friedrichs_point()) throw PoleError("theta = -pi: e^{i theta} + 1 vanishes");
    const double t = theta.value();
    const double half = 0.5 * t;
    // e^{i theta} + 1 and e^{i theta} - i with their real/imaginary parts formed
    // without cancellation (1 + cos t = 2 cos^2(t/2), sin t - 1 = -2 sin^2(pi/4 - t/2)).
    const double ch = std::cos(half);
    const double sq = std::sin(0.25 * kPi - half);
    const Complex denominator(2.0 * ch * ch, std::sin(t));
    const Complex numerator(std::cos(t), -2.0 * sq * sq);
    const Complex rotation(kSqrtHalf, kSqrtHalf);
    return -rotation * (numerator / denominator);
}

// ---------------------------------------------------------------------------

DeficiencyElement::DeficiencyElement(int sign) : sign_(sign)
{
    if (sign != 1 && sign != -1) throw std::invalid_argument("deficiency element sign must be +1 or -1");
    decay_ = std::polar(1.0, -sign * 0.25 * kPi);
}

Complex DeficiencyElement::operator()(const Point3& x) const
{
    const double r = x.norm();
    if (r == 0.0) throw SingularityError("deficiency element is singular at the origin");
    return std::exp(-decay_ * r) / (kFourPi * r);
}

DeficiencyElement deficiency_element(int sign) { return DeficiencyElement(sign); }

Complex OriginExpansion::ratio() const
{
    if (c_minus1 == Complex(0.0, 0.0)) throw FitError("ratio undefined: vanishing 1/|x| coefficient");
    return c_0 / c_minus1;
}

Complex evaluate_domain_element(const DomainElementSpec& element, const Point3& x)
{
    const Complex regular = element.regular_part ? element.regular_part(x) : Complex(0.0, 0.0);
    if (element.parameter.is_friedrichs() || element.beta == Complex(0.0, 0.0)) return regular;
    const double r = x.norm();
    if (r == 0.0) throw SingularityError("domain element with beta != 0 is singular at the origin");
    static const CutoffProfile chi = make_standard_cutoff();
    const double cut = chi.value(r / element.chi_radius);
    if (cut == 0.0) return regular;
    return cut * element.beta * (1.0 / r + element.parameter.mu()) + regular;
}

// ---------------------------------------------------------------------------

OriginExpansion fit_origin_expansion(const std::function<Complex(const Point3&)>& f, std::span<const double> radii,
                                     const QuadratureSpec& spec, int remainder_degree)
{
    spec.validate();
    std::vector<double> rs(radii.begin(), radii.end());
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    if (rs.size() < 3) throw FitError("origin expansion fit needs at least three distinct radii");
    if (rs.front() <= 0.0) throw FitError("origin expansion radii must be positive");
    const int n = int(rs.size());
    const int degree = remainder_degree < 0 ? std::min(2, n - 2) : remainder_degree;
    const int p = 2 + degree;
    if (p > n) throw FitError("origin expansion fit has more unknowns than radii");

    const quad::SphereRule3 rule = quad::sphere_rule3({0.0, 0.0, 1.0}, -1.0, 1.0, spec.angular_order, false);
    std::vector<Complex> rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = quad::sphere_mean(f, Point3{}, rs[i], rule);

    // Column-major design matrix, columns scaled to unit norm.
    std::vector<double> a(std::size_t(n) * p);
    std::vector<double> scale(p);
    for (int j = 0; j < p; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = j == 0 ? 1.0 / rs[i] : std::pow(rs[i], j - 1);
            a[std::size_t(j) * n + i] = v;
            s += v * v;
        }
        scale[j] = std::sqrt(s);
        for (int i = 0; i < n; ++i) a[std::size_t(j) * n + i] /= scale[j];
    }

    // Householder QR, applied to the complex right-hand side.
    std::vector<Complex> b = rhs;
    std::vector<double> diag(p);
    for (int k = 0; k < p; ++k) {
        double* col = &a[std::size_t(k) * n];
        double norm = 0.0;
        for (int i = k; i < n; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        if (norm < 1e-13) throw FitError("degenerate design matrix in origin expansion fit");
        const double alpha = col[k] > 0.0 ? -norm : norm;
        col[k] -= alpha;
        double vnorm = 0.0;
        for (int i = k; i < n; ++i) vnorm += col[i] * col[i];
        for (int j = k + 1; j < p; ++j) {
            double* other = &a[std::size_t(j) * n];
            double d = 0.0;
            for (int i = k; i < n; ++i) d += col[i] * other[i];
            const double factor = 2.0 * d / vnorm;
            for (int i = k; i < n; ++i) other[i] -= factor * col[i];
        }
        Complex d{};
        for (int i = k; i < n; ++i) d += col[i] * b[i];
        const Complex factor = 2.0 * d / vnorm;
        for (int i = k; i < n; ++i) b[i] -= factor * col[i];
        diag[k] = alpha;
    }
    std::vector<Complex> coef(p);
    for (int k = p - 1; k >= 0; --k) {
        Complex s = b[k];
        for (int j = k + 1; j < p; ++j) s -= a[std::size_t(j) * n + k] * coef[j];
        coef[k] = s / diag[k];
    }
    for (int j = 0; j < p; ++j) coef[j] /= scale[j];

    double misfit = 0.0;
    for (int i = 0; i < n; ++i) {
        Complex model = coef[0] / rs[i];
        for (int j = 1; j < p; ++j) model += coef[j] * std::pow(rs[i], j - 1);
        misfit += std::norm(rhs[i] - model);
    }
    return {coef[0], coef[1], std::sqrt(misfit / n)};
}

}  // namespace pointlab::parametrization
