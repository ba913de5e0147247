#pragma once

// The theta-circle and mu-line parametrizations of the self-adjoint
// extensions, the deficiency elements, and origin-expansion fitting.

#include <functional>
#include <span>

#include "pointlab/core.hpp"

namespace pointlab::parametrization {

/// mu(theta) = (sqrt 2 / 2)(tan(theta/2) - 1); theta = -pi is the Friedrichs point.
ExtensionParameter theta_to_mu(ThetaParameter theta);

/// Inverse map: theta = 2 atan(sqrt 2 mu + 1) in (-pi, pi); Friedrichs -> -pi.
ThetaParameter mu_to_theta(const ExtensionParameter& param);

/// -e^{i pi/4} (e^{i theta} - i) / (e^{i theta} + 1), evaluated in complex
/// arithmetic. Throws PoleError at theta = -pi.
Complex theta_to_mu_complex_form(ThetaParameter theta);

/// Spanning element of K_+ (sign = +1) or K_- (sign = -1):
/// u(x) = e^{-c|x|} / (4 pi |x|), c = e^{-i pi/4} for +, e^{i pi/4} for -.
class DeficiencyElement {
public:
    explicit DeficiencyElement(int sign);

    int sign() const { return sign_; }
    Complex decay_constant() const { return decay_; }
    /// The spectral shift: (-Laplacian - shift) u = 0 away from the origin, shift = +i or -i.
    Complex spectral_shift() const { return Complex(0.0, double(sign_)); }

    /// Throws SingularityError at the origin.
    Complex operator()(const Point3& x) const;

    Complex expansion_coefficient_minus1() const { return 1.0 / kFourPi; }
    Complex expansion_coefficient_0() const { return -decay_ / kFourPi; }

private:
    int sign_;
    Complex decay_;
};

DeficiencyElement deficiency_element(int sign);

/// f(x) ~ c_minus1 / |x| + c_0 + O(|x|) near the origin.
struct OriginExpansion {
    Complex c_minus1;
    Complex c_0;
    double fit_residual = 0.0;

    /// c_0 / c_minus1; throws FitError when c_minus1 vanishes.
    Complex ratio() const;
};

struct DomainElementSpec {
    ExtensionParameter parameter = ExtensionParameter::friedrichs();
    Complex beta{0.0, 0.0};
    double chi_radius = 1.0;
    std::function<Complex(const Point3&)> regular_part;  // vanishes at the origin
};

/// chi(|x|) beta (1/|x| + mu) + regular_part(x), chi the standard cutoff
/// rescaled to chi_radius (chi = 1 on |x| <= chi_radius/2).
Complex evaluate_domain_element(const DomainElementSpec& element, const Point3& x);

/// Least-squares fit of sphere averages of f to a/r + b + sum_k c_k r^k.
///
/// The polynomial remainder (degree `remainder_degree`, default
/// min(2, n - 2) for n distinct radii) absorbs the O(|x|) tail so that the
/// singular and constant coefficients are not biased by it. Requires at least
/// three distinct positive radii.
OriginExpansion fit_origin_expansion(const std::function<Complex(const Point3&)>& f, std::span<const double> radii,
                                     const QuadratureSpec& spec, int remainder_degree = -1);

}  // namespace pointlab::parametrization
