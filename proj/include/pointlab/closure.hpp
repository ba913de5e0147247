#pragma once

// Cutoff families used to show that smooth functions vanishing near the
// origin are dense in the Sobolev domain: the naive rescaling 1 - phi(|x|/eps)
// and the tailored family 1 - phi((|x|/eps)^eps), their Laplacians, and the
// radial integrals that control the approximation error.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pointlab/core.hpp"

namespace pointlab::closure {

enum class CutoffFamilyKind { Naive, Tailored };

/// Radial composite argument: |x| / eps (Naive) or (|x| / eps)^eps (Tailored).
double family_argument(CutoffFamilyKind kind, double eps, double r);

/// phi_eps(r) = 1 - phi(argument).
double family_value(CutoffFamilyKind kind, double eps, double r);

/// Inner radius below which phi_eps vanishes: eps / 2, or eps 2^{-1/eps}.
double family_inner_radius(CutoffFamilyKind kind, double eps);

/// (d-2) eps^{1-eps} r^{eps-2} phi'(h) + eps^{2-2eps} r^{2eps-2} phi''(h) + eps^{2-eps} r^{eps-2} phi'(h),
/// h = (r/eps)^eps, with the standard profile. This equals the ordinary
/// Laplacian (sum of second derivatives) of phi(h), i.e. -L phi(h).
/// Zero when h lies outside (1/2, 1).
double laplacian_of_tailored_cutoff(int d, double eps, double r);

/// Sum of second derivatives of the radial function phi(argument) in R^d.
double radial_laplacian_of_profile(CutoffFamilyKind kind, int d, double eps, double r);

enum class RadialCase { D2, D3, D4 };

std::string to_string(RadialCase c);

/// Dominant radial factor by quadrature (no angular constant):
/// D4 = eps^{2-2eps} int_0^eps r^{2eps-4} r^3 dr, D3 = eps^{2-2eps} int_0^eps r^{2eps-3} r^2 dr,
/// D2 = -eps^{4-2eps} int_0^eps r^{2eps-1} ln r dr.
double closure_radial_integral(RadialCase c, double eps, const QuadratureSpec& spec = QuadratureSpec::standard());

/// Closed forms: eps / 2 for D4 and D3, -eps^3 ln(eps) / 2 + eps^2 / 4 for D2.
double closure_radial_closed_form(RadialCase c, double eps);

/// Squared L^2 norm over R^d of L(phi_eps - 1), angular constant included.
double cutoff_l2_laplacian_norm(CutoffFamilyKind kind, int d, double eps, const QuadratureSpec& spec);

/// The three squared terms of the tailored Laplacian in d = 4, each integrated
/// against r^3 dr over (0, eps) without cutoff factors:
/// named = eps^{2-2eps} r^{2eps-4}, second = eps^{4-4eps} r^{4eps-4}, third = eps^{4-2eps} r^{2eps-4}.
struct DominantTerms {
    double named = 0.0;
    double second = 0.0;
    double third = 0.0;
};
DominantTerms dominant_term_integrals(double eps, const QuadratureSpec& spec = QuadratureSpec::standard());

/// ((2 + eps) max|phi'| + eps max|phi''|)^2, the factor bounding the cutoff
/// derivatives in the d = 4 estimate.
double phi_derivative_bound(double eps);

/// Smooth test function on R^d with its gradient and Laplacian (sum of second derivatives).
struct TestFunction {
    std::function<double(std::span<const double>)> value;
    std::function<std::vector<double>(std::span<const double>)> gradient;
    std::function<double(std::span<const double>)> laplacian;
};

/// Gaussian |x|^k e^{-|x|^2}, k in {0, 1, 2}. k = 1 vanishes at the origin and lies in
/// W^{2,2} for d >= 3; k = 2 is smooth and serves d = 2.
TestFunction gaussian_test_function(int d, int k);

struct W22Norms {
    double value_term = 0.0;      // ||psi phi_eps - psi||
    double laplacian_term = 0.0;  // ||(L psi)(phi_eps - 1)||
    double gradient_term = 0.0;   // ||grad psi . grad(phi_eps - 1)||
    double cutoff_term = 0.0;     // ||psi L(phi_eps - 1)||
};

/// The four norms of the product-rule split for the tailored family, d = 2..4,
/// by radial (log-radius) times sphere quadrature over |x| <= eps.
W22Norms w22_approximation_error(int d, const TestFunction& psi, double eps, const QuadratureSpec& spec);

/// The one-dimensional case is recorded, not certified.
std::string d1_domain_statement();

}  // namespace pointlab::closure
