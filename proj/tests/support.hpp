#pragma once

// Deterministic sample generators shared by the test binaries.

#include <cmath>
#include <random>
#include <vector>

#include "pointlab/core.hpp"

namespace testsupport {

using pointlab::Point3;

/// n directions on a Fibonacci spiral.
inline std::vector<Point3> fibonacci_directions(int n)
{
    std::vector<Point3> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double rho = std::sqrt(1.0 - z * z);
        out.push_back({rho * std::cos(golden * i), rho * std::sin(golden * i), z});
    }
    return out;
}

/// Radii evenly spaced on [r_lo, r_hi] (endpoints included) along Fibonacci directions.
inline std::vector<Point3> shell_points(int n, double r_lo, double r_hi)
{
    std::vector<Point3> out;
    const auto dirs = fibonacci_directions(n);
    for (int i = 0; i < n; ++i) {
        const double r = n == 1 ? r_lo : r_lo + (r_hi - r_lo) * i / (n - 1);
        out.push_back(r * dirs[i]);
    }
    return out;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20240611);
    return g;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Point3 random_point(double r_lo, double r_hi)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Point3 d{n(rng()), n(rng()), n(rng())};
    return (uniform(r_lo, r_hi) / d.norm()) * d;
}

/// Standard cutoff in extended precision: 1 below 1/2, 0 above 1,
/// 1 / (1 + exp(1/(1-s) - 1/(s-1/2))) in between.
inline long double cutoff_ld(long double s)
{
    if (s <= 0.5L) return 1.0L;
    if (s >= 1.0L) return 0.0L;
    const long double g = 1.0L / (1.0L - s) - 1.0L / (s - 0.5L);
    return g > 0.0L ? std::exp(-g) / (1.0L + std::exp(-g)) : 1.0L / (1.0L + std::exp(g));
}

/// g'' + (d - 1) g' / r by central differences at step h for g(r) = cutoff((r/eps)^eps),
/// carried in extended precision so that h = 1e-4 r stays above the rounding floor.
inline double fd_tailored_laplacian(int d, double eps, double r, double h)
{
    const long double e = eps, rr = r, hh = h;
    auto g = [&](long double s) { return cutoff_ld(std::pow(s / e, e)); };
    const long double gp = g(rr + hh), g0 = g(rr), gm = g(rr - hh);
    return double((gp - 2.0L * g0 + gm) / (hh * hh) + (d - 1) / rr * (gp - gm) / (2.0L * hh));
}

}  // namespace testsupport
