#pragma once

// Deterministic quadrature primitives: Gauss rules, composite and adaptive
// Gauss-Kronrod integration, log-radius block summation, oscillatory sine
// transforms with Euler acceleration, and sphere product rules.

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <span>
#include <vector>

#include "pointlab/core.hpp"

namespace pointlab::quad {

/// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

GaussRule gauss_legendre(int n);

/// Gauss rule for the weight sqrt(1 - t^2) on [-1, 1] (Chebyshev, second kind).
GaussRule gauss_chebyshev_second(int n);

/// Unit-sphere measure omega_{d-1} of S^{d-1} in R^d, d = 1..5.
double sphere_measure(int d);

template <class T>
inline double magnitude(const T& v)
{
    return std::abs(v);
}

/// Composite fixed-order rule over `panels` equal panels of [a, b].
template <class F>
auto fixed_panels(F&& f, double a, double b, int panels, const GaussRule& rule)
{
    using R = decltype(f(a));
    R sum{};
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double half = 0.5 * width;
        const double mid = lo + half;
        R panel{};
        for (int k = 0; k < rule.size(); ++k) panel += rule.weights[k] * f(mid + half * rule.nodes[k]);
        sum += half * panel;
    }
    return sum;
}

namespace detail {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1].
inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
auto gk15(F& f, double a, double b, double& err)
{
    using R = decltype(f(a));
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const R fc = f(mid);
    R kron = kWgk[7] * fc;
    R gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const R f1 = f(mid - dx);
        const R f2 = f(mid + dx);
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    err = magnitude(half * (kron - gauss));
    return R(half * kron);
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15). Throws QuadratureFailure when the
/// error target is not met before an interval would be split below
/// (b - a) * 2^-max_depth or the interval budget runs out.
template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, double rel_tol, int max_depth, int max_intervals = 4000)
{
    using R = decltype(f(a));
    struct Piece {
        double lo, hi, err;
        R val;
        int depth;
        bool operator<(const Piece& o) const { return err < o.err; }
    };
    if (a == b) return R{};
    std::priority_queue<Piece> heap;
    double e0 = 0.0;
    R total = detail::gk15(f, a, b, e0);
    double total_err = e0;
    heap.push({a, b, e0, total, 0});
    int count = 1;
    while (total_err > std::max(abs_tol, rel_tol * magnitude(total))) {
        Piece worst = heap.top();
        if (worst.depth >= max_depth || count >= max_intervals || !std::isfinite(total_err)) {
            throw QuadratureFailure("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                                    std::to_string(b) + "], error estimate " + std::to_string(total_err));
        }
        heap.pop();
        const double m = 0.5 * (worst.lo + worst.hi);
        double el = 0.0, er = 0.0;
        const R vl = detail::gk15(f, worst.lo, m, el);
        const R vr = detail::gk15(f, m, worst.hi, er);
        total += vl + vr - worst.val;
        total_err += el + er - worst.err;
        heap.push({worst.lo, m, el, vl, worst.depth + 1});
        heap.push({m, worst.hi, er, vr, worst.depth + 1});
        ++count;
    }
    // Re-sum from pieces to shed accumulated update rounding.
    R resum{};
    double err_resum = 0.0;
    std::vector<Piece> pieces;
    pieces.reserve(heap.size());
    while (!heap.empty()) {
        pieces.push_back(heap.top());
        heap.pop();
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& l, const Piece& r) { return l.lo < r.lo; });
    for (const auto& p : pieces) {
        resum += p.val;
        err_resum += p.err;
    }
    (void)err_resum;
    return resum;
}

/// Sums block(0) + block(1) + ... until the blocks become negligible.
///
/// Stops after three consecutive blocks whose magnitude, extended by a
/// geometric tail estimate, falls below the tolerance, and never before
/// `min_blocks`. Throws QuadratureFailure after `max_blocks`.
template <class Block>
auto sum_blocks(Block&& block, const QuadratureSpec& spec, int min_blocks, int max_blocks)
{
    using R = decltype(block(0));
    R sum{};
    int quiet = 0;
    double prev = -1.0;
    for (int k = 0; k < max_blocks; ++k) {
        const R b = block(k);
        sum += b;
        const double m = magnitude(b);
        double tail = m;
        if (prev > 0.0 && m < prev) {
            const double q = m / prev;
            tail = m * q / (1.0 - q);
        }
        prev = m;
        const double target = std::max(spec.abs_tol, spec.rel_tol * magnitude(sum));
        if (std::max(m, tail) <= 0.1 * target) {
            if (++quiet >= 3 && k + 1 >= min_blocks) return sum;
        } else {
            quiet = 0;
        }
    }
    throw QuadratureFailure("block summation did not converge (integral divergent or too slowly decaying)");
}

/// integral_0^radius g(r) dr via r = radius * exp(-u), resolving algebraic
/// behaviour at r = 0. `g` must be integrable near 0.
template <class G>
auto integrate_radial_log(G&& g, double radius, const QuadratureSpec& spec)
{
    auto integrand = [&](double u) {
        const double r = radius * std::exp(-u);
        return g(r) * r;
    };
    auto block = [&](int k) {
        return adaptive(integrand, double(k), double(k + 1), 0.01 * spec.abs_tol, 0.01 * spec.rel_tol,
                        spec.subdivision_depth);
    };
    // r stays above ~radius * 1e-300.
    return sum_blocks(block, spec, 8, 690);
}

/// integral_a^inf g(r) dr for exponentially decaying g, in blocks of width `scale`.
template <class G>
auto integrate_decaying(G&& g, double a, double scale, const QuadratureSpec& spec)
{
    auto block = [&](int k) {
        return adaptive(g, a + k * scale, a + (k + 1) * scale, 0.01 * spec.abs_tol, 0.01 * spec.rel_tol,
                        spec.subdivision_depth);
    };
    return sum_blocks(block, spec, 4, 4000);
}

/// omega_{d-1} * integral_0^radius f(r) r^{d-1} dr.
double radial_ball_integral(const std::function<double(double)>& f, int d, double radius, const QuadratureSpec& spec);

/// integral_0^inf A(rho) sin(omega rho) d rho for amplitudes decaying like
/// 1/rho or faster: Gauss-Legendre between consecutive zeros of the sine,
/// direct summation of the first pieces and Euler transformation of the
/// alternating tail.
template <class A>
auto sine_transform(A&& amplitude, double omega, const QuadratureSpec& spec, int direct_pieces = 16,
                    int euler_terms = 48)
{
    using R = decltype(amplitude(1.0));
    const GaussRule rule = gauss_legendre(std::max(spec.radial_order, 8));
    const double period = kPi / omega;
    auto piece = [&](int k) {
        const double lo = k * period;
        const double half = 0.5 * period;
        const double mid = lo + half;
        R s{};
        for (int j = 0; j < rule.size(); ++j) {
            const double x = mid + half * rule.nodes[j];
            s += rule.weights[j] * amplitude(x) * std::sin(omega * x);
        }
        return R(half * s);
    };
    R head{};
    for (int k = 0; k < direct_pieces; ++k) head += piece(k);

    // b_k = (-1)^k I_{K+k} has constant sign; tail = sum (-1)^k b_k.
    std::vector<R> b(euler_terms);
    for (int k = 0; k < euler_terms; ++k) b[k] = (k % 2 == 0 ? 1.0 : -1.0) * piece(direct_pieces + k);
    R tail{};
    double scale = 0.5;
    for (int n = 0; n < euler_terms; ++n) {
        const R term = (n % 2 == 0 ? 1.0 : -1.0) * scale * b[0];
        tail += term;
        for (int k = 0; k + 1 < euler_terms - n; ++k) b[k] = b[k + 1] - b[k];
        scale *= 0.5;
        if (magnitude(term) < 1e-3 * spec.abs_tol) break;
    }
    return head + tail;
}

// ---------------------------------------------------------------------------
// Sphere rules
// ---------------------------------------------------------------------------

/// Product rule on a spherical zone of S^2 around `axis`: Gauss-Legendre in
/// cos(angle to axis) restricted to [cos_lo, cos_hi], trapezoid in azimuth.
/// With `axisymmetric` the azimuth collapses to one node carrying 2 pi.
struct SphereRule3 {
    std::vector<Point3> directions;
    std::vector<double> weights;
};

SphereRule3 sphere_rule3(const Point3& axis, double cos_lo, double cos_hi, int order, bool axisymmetric);

/// Full-sphere product rule on S^{d-1}, d = 1..5. Points are stored flat with stride d.
struct SphereRuleN {
    int dim = 0;
    std::vector<double> points;
    std::vector<double> weights;
    std::span<const double> point(std::size_t i) const { return {points.data() + i * dim, std::size_t(dim)}; }
    std::size_t size() const { return weights.size(); }
};

SphereRuleN sphere_rule(int d, int order);

/// Mean of f over the sphere |y - center| = radius (full rule of the given order).
template <class F>
auto sphere_mean(F&& f, const Point3& center, double radius, const SphereRule3& rule)
{
    using R = decltype(f(center));
    R s{};
    for (std::size_t i = 0; i < rule.weights.size(); ++i) s += rule.weights[i] * f(center + radius * rule.directions[i]);
    return R(s / kFourPi);
}

}  // namespace pointlab::quad
