#include <doctest.h>

#include <vector>

#include "pointlab/finite_difference.hpp"
#include "pointlab/parametrization.hpp"
#include "pointlab/resolvent.hpp"
#include "support.hpp"

using namespace pointlab;
using namespace pointlab::resolvent;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("free kernel examples")
{
    const Point3 x{1.0, 0.0, 0.0}, y{0.0, 0.0, 0.0};
    const Complex k1 = free_resolvent_kernel(kI, x, y);
    CHECK(k1.real() == doctest::Approx(0.02927491576215958).epsilon(1e-14));
    CHECK(std::abs(k1.imag()) < 1e-18);
    CHECK(free_resolvent_kernel(kI, y, x) == k1);
    const Complex k10 = free_resolvent_kernel(kI, Point3{10.0, 0.0, 0.0}, y);
    CHECK((k10 / k1).real() == doctest::Approx(std::exp(-9.0) / 10.0).epsilon(1e-13));
    CHECK_THROWS_AS(free_resolvent_kernel(kI, x, x), SingularityError);
}

TEST_CASE("b coefficient")
{
    const Complex b = b_coefficient(0.0, Complex(1.0));
    CHECK(std::abs(b - kI / kFourPi) < 1e-17);
    for (int k = 0; k < 200; ++k) {
        const double mu = testsupport::uniform(-3.0, 3.0);
        const Complex lambda(testsupport::uniform(-3.0, 3.0), testsupport::uniform(-3.0, 3.0));
        const Complex bb = b_coefficient(mu, lambda);
        CHECK(std::abs((1.0 / kFourPi + kI * lambda * bb) / bb - mu) < 1e-12 * std::max(1.0, std::abs(lambda)));
    }
    CHECK_THROWS_AS(b_coefficient(1.0, -kI), PoleError);
}

TEST_CASE("resolvent kernel examples")
{
    const Point3 x{1.0, 0.0, 0.0}, y{-1.0, 0.0, 0.0};
    const auto fr = resolvent_kernel(ExtensionParameter::friedrichs(), kI, x, y);
    CHECK(fr.extra_part == Complex(0.0, 0.0));
    CHECK(fr.total == fr.free_part);

    const auto m0 = resolvent_kernel(ExtensionParameter::finite(0.0), kI, x, y);
    CHECK(m0.extra_part.real() == doctest::Approx(0.01076963965092431).epsilon(1e-14));
    CHECK(std::abs(m0.extra_part.imag()) < 1e-18);
    CHECK(m0.extra_part.real() == doctest::Approx(std::exp(-2.0) / kFourPi).epsilon(1e-14));

    const auto m1 = resolvent_kernel(ExtensionParameter::finite(1.0), kI, x, y);
    CHECK(m1.extra_part.real() == doctest::Approx(0.005384819825462157).epsilon(1e-14));
    CHECK(m1.total == m1.free_part + m1.extra_part);

    CHECK_THROWS_AS(resolvent_kernel(ExtensionParameter::finite(1.0), -kI, x, y), PoleError);
    CHECK_THROWS_AS(resolvent_kernel(ExtensionParameter::finite(1.0), kI, Point3{}, y), SingularityError);
    CHECK_THROWS_AS(resolvent_kernel(ExtensionParameter::friedrichs(), kI, x, x), SingularityError);
    CHECK_NOTHROW(resolvent_kernel(ExtensionParameter::friedrichs(), kI, Point3{}, y));
}

TEST_CASE("kernel symmetry is exact")
{
    for (int k = 0; k < 200; ++k) {
        const Point3 x = testsupport::random_point(0.1, 3.0);
        const Point3 y = testsupport::random_point(0.1, 3.0);
        const Complex lambda(testsupport::uniform(-2.0, 2.0), testsupport::uniform(-1.0, 2.0));
        const auto p = ExtensionParameter::finite(testsupport::uniform(-2.0, 2.0));
        CHECK(resolvent_kernel(p, lambda, x, y).total == resolvent_kernel(p, lambda, y, x).total);
    }
}

TEST_CASE("pole classification")
{
    const auto neg = pole_location(ExtensionParameter::finite(-2.0));
    REQUIRE(neg);
    CHECK(neg->location == Complex(0.0, 2.0));
    CHECK(neg->kind == PoleKind::EigenvalueType);
    const auto pos = pole_location(ExtensionParameter::finite(3.0));
    REQUIRE(pos);
    CHECK(pos->location == Complex(0.0, -3.0));
    CHECK(pos->kind == PoleKind::Resonance);
    CHECK(pole_location(ExtensionParameter::finite(0.0))->kind == PoleKind::Resonance);
    CHECK_FALSE(pole_location(ExtensionParameter::friedrichs()));
}

TEST_CASE("pole residue by approach along four directions")
{
    const Point3 x{0.4, -0.3, 0.5}, y{-0.2, 0.9, 0.1};
    for (double mu : {-1.5, -0.5, 0.5, 2.0}) {
        const Complex pole(0.0, -mu);
        const Complex expected = kI * std::exp(mu * (x.norm() + y.norm())) / (kFourPi * x.norm() * y.norm());
        for (Complex dir : {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)}) {
            const Complex lambda = pole + 1e-9 * dir;
            const Complex extra = resolvent_kernel(ExtensionParameter::finite(mu), lambda, x, y).extra_part;
            CHECK(std::abs((lambda - pole) * extra - expected) <= 1e-8 * std::abs(expected));
        }
        CHECK(std::abs(extra_part_times_pole_factor(pole, x, y) - expected) <= 1e-14 * std::abs(expected));
    }
}

TEST_CASE("kernel is lambda^2-harmonic in x away from singularities")
{
    for (int k = 0; k < 20; ++k) {
        Point3 x, y;
        do {
            x = testsupport::random_point(0.5, 2.5);
            y = testsupport::random_point(0.5, 2.5);
        } while (distance(x, y) < 0.5);
        const Complex lambda(testsupport::uniform(0.0, 1.5), testsupport::uniform(0.3, 1.5));
        const auto p = ExtensionParameter::finite(testsupport::uniform(-1.5, 1.5));
        auto kx = [&](const Point3& z) { return resolvent_kernel(p, lambda, z, y).total; };
        const double h = 1e-3;
        const Complex lk = fd_laplacian3(kx, x, h);
        const Complex kval = kx(x);
        CHECK(std::abs(lk - lambda * lambda * kval) / std::abs(kval) <= 5e3 * h * h);
    }
}

TEST_CASE("origin fit of the kernel gives mu")
{
    const std::vector<double> radii{0.01, 0.02, 0.03, 0.04, 0.05};
    const QuadratureSpec spec;
    for (double mu : {-1.0, 0.5, 2.0}) {
        for (Complex lambda : {kI, Complex(1.0, 1.0), Complex(0.5, 2.0)}) {
            if (lambda + kI * mu == Complex{}) continue;
            for (const Point3& y : {Point3{0.0, 0.0, 1.0}, Point3{1.2, -0.4, 0.5}}) {
                auto k = [&](const Point3& x) { return resolvent_kernel(ExtensionParameter::finite(mu), lambda, x, y).total; };
                const auto e = parametrization::fit_origin_expansion(k, radii, spec);
                CHECK(std::abs(e.ratio() - mu) < 1e-3);
            }
        }
    }
}

namespace {
SourceField gaussian_bump(const Point3& c, double w)
{
    SourceField f;
    f.center = c;
    f.radius = w;
    f.value = [c, w](const Point3& y) {
        const double q = (y - c).norm_sq() / (w * w);
        return q < 1.0 ? std::pow(1.0 - q, 6) : 0.0;
    };
    return f;
}
}  // namespace

TEST_CASE("apply_resolvent of zero data")
{
    SourceField zero;
    zero.value = [](const Point3&) { return 0.0; };
    CHECK(apply_resolvent(ExtensionParameter::finite(1.0), kI, zero, Point3{1, 1, 0}, QuadratureSpec{}) == Complex(0.0, 0.0));
    SourceField empty;
    CHECK(apply_resolvent(ExtensionParameter::finite(1.0), kI, empty, Point3{1, 1, 0}, QuadratureSpec{}) == Complex(0.0, 0.0));
    CHECK_THROWS_AS(apply_resolvent(ExtensionParameter::finite(1.0), Complex(1.0), zero, Point3{1, 1, 0}, QuadratureSpec{}),
                    DomainError);
}

TEST_CASE("apply_resolvent: the extension adds a rank-one term")
{
    const SourceField f = gaussian_bump({1.0, 0.5, 0.0}, 0.6);
    const QuadratureSpec spec;
    const Complex lambda = kI;
    const auto p = ExtensionParameter::finite(1.0);
    // The difference divided by e^{i lambda |x|} / |x| does not depend on x.
    Complex c_ref{};
    bool first = true;
    for (const Point3& x : {Point3{-1.0, 0.2, 0.3}, Point3{0.3, 2.0, -1.0}, Point3{1.1, 0.6, 0.1}, Point3{0.0, 0.0, 3.0}}) {
        const Complex diff = apply_resolvent(p, lambda, f, x, spec) -
                             apply_resolvent(ExtensionParameter::friedrichs(), lambda, f, x, spec);
        const Complex g = std::exp(kI * lambda * x.norm()) / x.norm();
        const Complex c = diff / g;
        if (first) c_ref = c;
        first = false;
        CHECK(std::abs(c - c_ref) <= 1e-9 * std::abs(c_ref));
    }
    CHECK(std::abs(c_ref) > 0.0);
}

TEST_CASE("apply_resolvent solves (L - lambda^2) u = f")
{
    const SourceField f = gaussian_bump({1.0, 0.5, 0.0}, 0.6);
    const QuadratureSpec spec = QuadratureSpec::strict();
    const Complex lambda = kI;
    const auto p = ExtensionParameter::finite(1.0);
    auto u = [&](const Point3& x) { return apply_resolvent(p, lambda, f, x, spec); };
    const double h = 1e-2;
    for (const Point3& x : {Point3{1.1, 0.4, 0.1}, Point3{0.8, 0.7, -0.2}, Point3{-0.8, 0.5, 0.5}, Point3{2.0, 0.0, 0.0}}) {
        const Complex res = fd_laplacian3(u, x, h) - lambda * lambda * u(x) - f.value(x);
        CHECK(std::abs(res) <= 5e-3);
    }
}
