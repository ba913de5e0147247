#pragma once

// Closed-form resolvent kernels of the Friedrichs Laplacian and of L^mu,
// the coefficient b(mu, lambda), pole classification and resolvent
// application by quadrature.

#include <functional>
#include <optional>

#include "pointlab/core.hpp"

namespace pointlab::resolvent {

struct ResolventKernelValue {
    Complex free_part;
    Complex extra_part;
    Complex total;
};

/// e^{i lambda |x-y|} / (4 pi |x-y|). Throws SingularityError for x = y.
Complex free_resolvent_kernel(ComplexFrequency lambda, const Point3& x, const Point3& y);

/// i / (4 pi (lambda + i mu)). Throws PoleError at lambda = -i mu.
Complex b_coefficient(double mu, ComplexFrequency lambda);

/// Kernel of (L^mu - lambda^2)^{-1}. Off the upper half-plane the same
/// expression gives the meromorphic continuation.
ResolventKernelValue resolvent_kernel(const ExtensionParameter& param, ComplexFrequency lambda, const Point3& x,
                                      const Point3& y);

/// (lambda + i mu) * extra part = i e^{i lambda(|x|+|y|)} / (4 pi |x||y|); entire in lambda.
Complex extra_part_times_pole_factor(ComplexFrequency lambda, const Point3& x, const Point3& y);

enum class PoleKind { EigenvalueType, Resonance };

struct PoleInfo {
    Complex location;
    PoleKind kind;
};

/// Pole of the continued kernel at -i mu: eigenvalue-type for mu < 0,
/// resonance for mu >= 0, none for Friedrichs.
std::optional<PoleInfo> pole_location(const ExtensionParameter& param);

/// Source term with compact support in the ball (center, radius).
struct SourceField {
    std::function<double(const Point3&)> value;
    Point3 center;
    double radius = 1.0;
};

/// integral K(param, lambda, x, y) f(y) dy over the support of f. Requires
/// Im lambda > 0; near the support the integral is taken in spherical
/// coordinates centred at x so that the r^2 Jacobian cancels 1/|x-y|.
Complex apply_resolvent(const ExtensionParameter& param, ComplexFrequency lambda, const SourceField& f,
                        const Point3& x, const QuadratureSpec& spec);

}  // namespace pointlab::resolvent
