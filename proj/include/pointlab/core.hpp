#pragma once

// Shared domain types for the point-interaction library.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pointlab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation at a point where a kernel or element has a 1/r singularity.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole of a meromorphic expression.
class PoleError : public Error {
public:
    using Error::Error;
};

/// A numerical integral did not reach its tolerance within the allowed work.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain (divergent norm, mu >= 0 eigenfunction, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Point3
// ---------------------------------------------------------------------------

struct Point3 {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    constexpr Point3() = default;
    constexpr Point3(double x1, double x2, double x3) : c{x1, x2, x3} {}

    constexpr double operator[](std::size_t i) const { return c[i]; }
    constexpr double& operator[](std::size_t i) { return c[i]; }

    double norm() const { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]); }
    constexpr double norm_sq() const { return c[0] * c[0] + c[1] * c[1] + c[2] * c[2]; }
    constexpr bool is_origin() const { return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0; }

    friend constexpr Point3 operator+(const Point3& a, const Point3& b)
    {
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
    }
    friend constexpr Point3 operator-(const Point3& a, const Point3& b)
    {
        return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    }
    friend constexpr Point3 operator*(double s, const Point3& a) { return {s * a[0], s * a[1], s * a[2]}; }
    friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

constexpr double dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

// ---------------------------------------------------------------------------
// Extension parameters
// ---------------------------------------------------------------------------

/// Selects the extension L^mu: a finite real mu, or the Friedrichs point mu = infinity.
class ExtensionParameter {
public:
    static ExtensionParameter finite(double mu) { return ExtensionParameter(mu); }
    static ExtensionParameter friedrichs() { return ExtensionParameter(); }

    bool is_friedrichs() const { return !mu_.has_value(); }
    bool is_finite() const { return mu_.has_value(); }

    /// Throws DomainError for the Friedrichs point.
    double mu() const
    {
        if (!mu_) throw DomainError("Friedrichs extension has no finite mu");
        return *mu_;
    }

    std::string to_string() const;

    friend bool operator==(const ExtensionParameter&, const ExtensionParameter&) = default;

private:
    ExtensionParameter() = default;
    explicit ExtensionParameter(double mu) : mu_(mu) {}
    std::optional<double> mu_;
};

/// Point on the circle of unitary maps; stored reduced into [-pi, pi).
class ThetaParameter {
public:
    explicit ThetaParameter(double theta);
    double value() const { return theta_; }
    bool is_friedrichs_point() const { return theta_ == -kPi; }

private:
    double theta_;
};

enum class HalfPlane { Upper, RealAxis, Lower };

class ComplexFrequency {
public:
    ComplexFrequency(Complex lambda);  // NOLINT: implicit by intent
    ComplexFrequency(double re, double im) : ComplexFrequency(Complex(re, im)) {}

    Complex value() const { return lambda_; }
    HalfPlane half_plane() const;

private:
    Complex lambda_;
};

// ---------------------------------------------------------------------------
// Cutoff profile
// ---------------------------------------------------------------------------

/// Smooth radial step: 1 on [0, inner], 0 on [outer, inf), monotone in between.
///
/// The transition is the logistic blend of two exp(-1/u) bumps, so the profile
/// and all its derivatives are continuous.
class CutoffProfile {
public:
    CutoffProfile(double inner, double outer);

    double value(double s) const;
    double d1(double s) const;
    double d2(double s) const;

    double inner() const { return inner_; }
    double outer() const { return outer_; }

    /// Upper bounds for |phi'| and |phi''| obtained by dense sampling.
    double max_abs_d1() const;
    double max_abs_d2() const;

private:
    double inner_;
    double outer_;
    double stretch_;  // d(unit)/ds
};

/// phi = 1 on [0, 1/2], 0 on [1, inf).
CutoffProfile make_standard_cutoff();

// ---------------------------------------------------------------------------
// Quadrature specification
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    int radial_order = 24;            // Gauss-Legendre points per radial panel
    int angular_order = 32;           // Gauss points in cos(theta); azimuth uses 2x this
    double truncation_radius = 1.0e4; // spectral cutoff R in phi(lambda^2 / R)
    int subdivision_depth = 48;       // max bisection level / panel budget
    double abs_tol = 1.0e-13;
    double rel_tol = 1.0e-11;

    /// Throws std::invalid_argument if an order is < 1 or a tolerance is not positive.
    void validate() const;

    static QuadratureSpec fast();
    static QuadratureSpec standard();
    static QuadratureSpec strict();
    /// "fast" | "default" | "strict"; throws std::invalid_argument otherwise.
    static QuadratureSpec preset(const std::string& name);

    friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

// ---------------------------------------------------------------------------
// Sampled field
// ---------------------------------------------------------------------------

struct SampledField {
    std::vector<Point3> points;
    std::vector<Complex> values;
    std::string parameter;  // rendering of the extension parameter
    double time_or_frequency = 0.0;

    /// Throws std::invalid_argument on size mismatch or repeated grid points.
    void validate() const;
};

}  // namespace pointlab
