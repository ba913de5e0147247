#pragma once

// Wave kernels of sin(t sqrt(L^mu)) / sqrt(L^mu) and cos(t sqrt(L^mu)), and
// their application to compactly supported Cauchy data.
//
// The free part acts through spherical means (Kirchhoff form). The
// diffracted part is the H(t - |x| - |y|) e^{mu(|x|+|y|-t)} / (4 pi |x||y|)
// kernel; its time derivative adds a single-layer term on |y| = t - |x|.

#include <functional>
#include <span>
#include <vector>

#include "pointlab/core.hpp"

namespace pointlab::propagator {

/// Where a data field may be nonzero: a ball, or a spherical shell about the origin.
struct Support {
    enum class Kind { Ball, Shell };
    Kind kind = Kind::Ball;
    Point3 center;        // Ball
    double radius = 0.0;  // Ball
    double inner = 0.0;   // Shell
    double outer = 0.0;   // Shell

    static Support ball(const Point3& center, double radius);
    static Support shell(double inner, double outer);

    double min_origin_distance() const;
    double max_origin_distance() const;
    /// Distance from x to the support set (0 inside).
    double distance_from(const Point3& x) const;
};

/// Initial displacement or velocity. `symmetric` declares the field radially
/// symmetric about the ball centre (Ball) or about the origin (Shell), which
/// lets sphere integrals collapse the azimuth.
struct DataField {
    std::function<double(const Point3&)> value;
    std::function<Point3(const Point3&)> gradient;
    Support support;
    bool symmetric = false;

    bool empty() const { return !value; }
};

/// amplitude * (1 - |y - c|^2 / w^2)^power inside the ball, 0 outside.
DataField make_ball_bump(const Point3& center, double width, double amplitude = 1.0, int power = 8);

/// amplitude * (1 - z^2)^power with z affine in |y|^2, z = -1 at |y| = inner and +1 at |y| = outer.
DataField make_shell_bump(double inner, double outer, double amplitude = 1.0, int power = 8);

struct CauchyData {
    DataField f;  // u(0)
    DataField g;  // du/dt(0)
};

struct WaveKernelValue {
    std::vector<double> singular_support;  // |x - y|, and |x| + |y| for finite mu
    double regular_part = 0.0;
};

/// H(t-|x|-|y|) e^{mu(|x|+|y|-t)} / (4 pi |x||y|) with H(0) = 1/2; 0 for Friedrichs.
/// Throws DomainError for t < 0 and SingularityError at the origin.
double sine_kernel_regular(const ExtensionParameter& param, double t, const Point3& x, const Point3& y);

WaveKernelValue sine_kernel(const ExtensionParameter& param, double t, const Point3& x, const Point3& y);

struct WaveParts {
    double free = 0.0;
    double diffracted = 0.0;
    double total() const { return free + diffracted; }
};

WaveParts sine_propagator_parts(const ExtensionParameter& param, double t, const DataField& g, const Point3& x,
                                const QuadratureSpec& spec);
WaveParts cosine_propagator_parts(const ExtensionParameter& param, double t, const DataField& f, const Point3& x,
                                  const QuadratureSpec& spec);

double apply_sine_propagator(const ExtensionParameter& param, double t, const DataField& g, const Point3& x,
                             const QuadratureSpec& spec);
double apply_cosine_propagator(const ExtensionParameter& param, double t, const DataField& f, const Point3& x,
                               const QuadratureSpec& spec);

WaveParts wave_solution_parts(const ExtensionParameter& param, double t, const CauchyData& data, const Point3& x,
                              const QuadratureSpec& spec);
double wave_solution(const ExtensionParameter& param, double t, const CauchyData& data, const Point3& x,
                     const QuadratureSpec& spec);

/// integral over S^2 of F(p + radius * w) dw, where F is the field value, or
/// grad(field) . w when `radial_derivative` is set.
double sphere_integral(const DataField& field, const Point3& p, double radius, const QuadratureSpec& spec,
                       bool radial_derivative = false);

/// Least-squares slope of log|v| against t.
double fitted_log_rate(std::span<const double> t, std::span<const double> v);

/// True when x lies outside both the direct cone (dist(x, supp) > t) and the
/// cone through the origin (|x| + min|y| > t).
bool outside_light_cones(const Support& support, double t, const Point3& x);

}  // namespace pointlab::propagator
