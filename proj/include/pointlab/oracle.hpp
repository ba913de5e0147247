#pragma once

// Independent numerical reconstructions of the closed forms: the radial
// inverse Fourier transform of the free resolvent, the real-line contour
// integral behind the diffracted wave kernel, Dirichlet integrals, residues,
// and finite-difference PDE residual sweeps.

#include <optional>
#include <span>
#include <vector>

#include "pointlab/core.hpp"
#include "pointlab/propagator.hpp"

namespace pointlab::oracle {

struct ReconstructionReport {
    Complex reconstructed;
    Complex closed_form;
    double abs_error = 0.0;
    std::optional<double> rel_error;  // only when closed_form != 0
    QuadratureSpec spec_used;
};

ReconstructionReport make_report(Complex reconstructed, Complex closed_form, const QuadratureSpec& spec);

/// (1 / (2 pi^2 r)) integral_0^inf rho sin(rho r) / (rho^2 + lambda^2) d rho
/// against e^{-lambda r} / (4 pi r). Requires Re lambda > 0 and r > 0.
ReconstructionReport fourier_radial_check(Complex lambda, double r, const QuadratureSpec& spec);

/// Real-line integral (1 / pi i) integral sin(t lambda) K_extra(mu, lambda, x, y) phi(lambda^2 / R) d lambda,
/// plus, for mu < 0 and `include_eigen_term`, the bound-state contribution
/// (sinh(mu t) / mu) P_mu(x, y). Compared against
/// H(t - |x| - |y|) e^{mu(|x|+|y|-t)} / (4 pi |x||y|).
ReconstructionReport reconstruct_diffracted_kernel(double mu, double t, const Point3& x, const Point3& y, double R,
                                                   const QuadratureSpec& spec,
                                                   const CutoffProfile& mollifier = make_standard_cutoff(),
                                                   bool include_eigen_term = true);

/// The bound-state term -sinh(mu t) e^{mu(|x|+|y|)} / (2 pi |x||y|) for mu < 0.
double eigen_term(double mu, double t, const Point3& x, const Point3& y);

/// integral over R of sin(a lambda) / lambda phi(lambda^2 / R) against pi sign(a).
ReconstructionReport dirichlet_integral_check(double a, double R, const QuadratureSpec& spec,
                                              const CutoffProfile& mollifier = make_standard_cutoff());

/// Trapezoid rule for the contour integral of e^{i lambda s} / (lambda + i mu)^2 over a
/// circle about -i mu, against 2 pi i (i s e^{mu s}). Requires mu != 0, s != 0.
ReconstructionReport residue_check(double mu, double s, const QuadratureSpec& spec, double circle_radius = 0.1);

enum class ResidualKind { Resolvent, Eigen, Wave };

struct ResidualProblem {
    ResidualKind kind = ResidualKind::Eigen;
    ExtensionParameter parameter = ExtensionParameter::finite(-1.0);
    Complex lambda{0.0, 1.0};  // Resolvent
    Point3 source{0.3, -0.2, 0.4};  // Resolvent: the second kernel argument y
    double t = 0.0;            // Wave
    propagator::CauchyData data;  // Wave
    QuadratureSpec spec{};     // Wave
};

struct ResidualSummary {
    std::vector<double> residuals;
    double max = 0.0;
    double median = 0.0;
};

/// Resolvent: |fd L K - lambda^2 K| / |K| in x. Eigen: |fd L v + mu^2 v| / |v|.
/// Wave: |d_tt u + fd L u| with both second differences at step h, absolute
/// (the data are expected to have unit scale). Throws std::invalid_argument
/// for an empty point list or malformed problem.
ResidualSummary pde_residual_sweep(const ResidualProblem& problem, std::span<const Point3> points, double h);

}  // namespace pointlab::oracle
