#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "pointlab/core.hpp"

namespace pointlab::spectrum {

/// Symbolic half-line [lower, +inf).
struct HalfLine {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

struct SpectralData {
    ExtensionParameter parameter = ExtensionParameter::friedrichs();
    std::vector<double> eigenvalues;  // empty, or {-mu^2} for mu < 0
    HalfLine essential;               // always [0, inf)
    std::optional<Complex> resonance;  // -i mu for finite mu >= 0
};

SpectralData spectrum_of(const ExtensionParameter& param);

/// Normalised eigenfunction sqrt(-mu / 2 pi) e^{mu|x|} / |x| for mu < 0.
/// Throws DomainError for mu >= 0, SingularityError at the origin.
double eigenfunction(double mu, const Point3& x);

/// Quadrature of the squared L^2 norm of e^{mu|x|}/|x| over R^3 (= -2 pi / mu).
/// Throws DomainError for mu >= 0 (the integral diverges).
double eigenfunction_norm_sq_unnormalized(double mu, const QuadratureSpec& spec);

/// Rank-one eigenprojection kernel -mu e^{mu(|x|+|y|)} / (2 pi |x||y|).
double projection_kernel(double mu, const Point3& x, const Point3& y);

}  // namespace pointlab::spectrum
