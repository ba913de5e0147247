#include "pointlab/closure.hpp"

#include <cmath>

#include "pointlab/quadrature.hpp"

namespace pointlab::closure {

namespace {

const CutoffProfile& profile()
{
    static const CutoffProfile p = make_standard_cutoff();
    return p;
}

void check_eps(double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
}

void check_dim(int d, int lo, int hi)
{
    if (d < lo || d > hi)
        throw std::invalid_argument("dimension " + std::to_string(d) + " outside " + std::to_string(lo) + ".." +
                                    std::to_string(hi));
}

// integral_0^eps r^{p-1} w(ln r) dr with r = eps e^{-v/p}: (eps^p / p) integral_0^inf e^{-v} w(ln eps - v/p) dv.
template <class W>
double power_log_integral(double p, double eps, W&& weight, const QuadratureSpec& spec)
{
    const double le = std::log(eps);
    auto g = [&](double v) { return std::exp(-v) * weight(le - v / p); };
    return std::pow(eps, p) / p * quad::integrate_decaying(g, 0.0, 1.0, spec);
}

}  // namespace

double family_argument(CutoffFamilyKind kind, double eps, double r)
{
    check_eps(eps);
    return kind == CutoffFamilyKind::Naive ? r / eps : std::pow(r / eps, eps);
}

double family_value(CutoffFamilyKind kind, double eps, double r)
{
    return 1.0 - profile().value(family_argument(kind, eps, r));
}

double family_inner_radius(CutoffFamilyKind kind, double eps)
{
    check_eps(eps);
    return kind == CutoffFamilyKind::Naive ? 0.5 * eps : eps * std::exp2(-1.0 / eps);
}

double laplacian_of_tailored_cutoff(int d, double eps, double r)
{
    check_eps(eps);
    check_dim(d, 1, 5);
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    const double h = std::pow(r / eps, eps);
    if (!(h > 0.5 && h < 1.0)) return 0.0;
    const double p1 = profile().d1(h);
    const double p2 = profile().d2(h);
    const double a = std::pow(eps, 1.0 - eps) * std::pow(r, eps - 2.0);
    const double b = std::pow(eps, 2.0 - 2.0 * eps) * std::pow(r, 2.0 * eps - 2.0);
    const double c = std::pow(eps, 2.0 - eps) * std::pow(r, eps - 2.0);
    return (d - 2) * a * p1 + b * p2 + c * p1;
}

double radial_laplacian_of_profile(CutoffFamilyKind kind, int d, double eps, double r)
{
    if (kind == CutoffFamilyKind::Tailored) return laplacian_of_tailored_cutoff(d, eps, r);
    check_eps(eps);
    check_dim(d, 1, 5);
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    const double s = r / eps;
    return profile().d2(s) / (eps * eps) + (d - 1) / r * profile().d1(s) / eps;
}

std::string to_string(RadialCase c)
{
    switch (c) {
    case RadialCase::D2: return "D2";
    case RadialCase::D3: return "D3";
    case RadialCase::D4: return "D4";
    }
    return "?";
}

double closure_radial_integral(RadialCase c, double eps, const QuadratureSpec& spec)
{
    check_eps(eps);
    spec.validate();
    // All three integrands are r^{2 eps - 1} times a weight in ln r.
    const double p = 2.0 * eps;
    switch (c) {
    case RadialCase::D4:
    case RadialCase::D3:
        return std::pow(eps, 2.0 - 2.0 * eps) * power_log_integral(p, eps, [](double) { return 1.0; }, spec);
    case RadialCase::D2:
        return -std::pow(eps, 4.0 - 2.0 * eps) * power_log_integral(p, eps, [](double lr) { return lr; }, spec);
    }
    throw std::invalid_argument("unknown radial case");
}

double closure_radial_closed_form(RadialCase c, double eps)
{
    check_eps(eps);
    if (c == RadialCase::D2) return -eps * eps * eps * std::log(eps) / 2.0 + eps * eps / 4.0;
    return eps / 2.0;
}

double cutoff_l2_laplacian_norm(CutoffFamilyKind kind, int d, double eps, const QuadratureSpec& spec)
{
    check_eps(eps);
    check_dim(d, 1, 5);
    spec.validate();
    const double omega = quad::sphere_measure(d);
    if (kind == CutoffFamilyKind::Naive) {
        auto integrand = [&](double r) {
            const double v = radial_laplacian_of_profile(kind, d, eps, r);
            return v * v * std::pow(r, d - 1);
        };
        return omega * quad::adaptive(integrand, 0.5 * eps, eps, 0.0, 0.01 * spec.rel_tol, spec.subdivision_depth);
    }
    // r = eps e^{-u}; the band (r/eps)^eps in (1/2, 1) is u in (0, ln 2 / eps).
    const double u_max = std::log(2.0) / eps;
    auto integrand = [&](double u) {
        const double r = eps * std::exp(-u);
        const double v = laplacian_of_tailored_cutoff(d, eps, r);
        return v * v * std::pow(r, d);
    };
    return omega * quad::adaptive(integrand, 0.0, u_max, 0.0, 0.01 * spec.rel_tol, spec.subdivision_depth);
}

DominantTerms dominant_term_integrals(double eps, const QuadratureSpec& spec)
{
    check_eps(eps);
    spec.validate();
    auto one = [](double) { return 1.0; };
    // With the r^3 weight: r^{2eps-1}, r^{4eps-1}, r^{2eps-1}.
    DominantTerms t;
    t.named = std::pow(eps, 2.0 - 2.0 * eps) * power_log_integral(2.0 * eps, eps, one, spec);
    t.second = std::pow(eps, 4.0 - 4.0 * eps) * power_log_integral(4.0 * eps, eps, one, spec);
    t.third = std::pow(eps, 4.0 - 2.0 * eps) * power_log_integral(2.0 * eps, eps, one, spec);
    return t;
}

double phi_derivative_bound(double eps)
{
    const double b = (2.0 + eps) * profile().max_abs_d1() + eps * profile().max_abs_d2();
    return b * b;
}

TestFunction gaussian_test_function(int d, int k)
{
    check_dim(d, 1, 5);
    if (k < 0 || k > 2) throw std::invalid_argument("gaussian test function supports k = 0, 1 or 2");
    auto radius = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    };
    // r^j with the k-dependent terms that vanish identically dropped (0 * r^{-1} = 0).
    auto term = [](double c, double r, int j) { return c == 0.0 ? 0.0 : c * std::pow(r, j); };
    TestFunction f;
    f.value = [=](std::span<const double> x) {
        const double r = radius(x);
        return std::pow(r, k) * std::exp(-r * r);
    };
    f.gradient = [=](std::span<const double> x) {
        const double r = radius(x);
        // psi'(r) / r = (k r^{k-2} - 2 r^k) e^{-r^2}
        const double dr_over_r = (term(k, r, k - 2) - 2.0 * std::pow(r, k)) * std::exp(-r * r);
        std::vector<double> g(x.begin(), x.end());
        for (double& v : g) v *= dr_over_r;
        return g;
    };
    f.laplacian = [=](std::span<const double> x) {
        const double r = radius(x);
        const double e = std::exp(-r * r);
        // psi'' + (d-1) psi' / r
        const double d1_over_r = term(k, r, k - 2) - 2.0 * std::pow(r, k);
        const double d2 = term(k * (k - 1), r, k - 2) - 2.0 * (2 * k + 1) * std::pow(r, k) + 4.0 * std::pow(r, k + 2);
        return (d2 + (d - 1) * d1_over_r) * e;
    };
    return f;
}

W22Norms w22_approximation_error(int d, const TestFunction& psi, double eps, const QuadratureSpec& spec)
{
    check_dim(d, 2, 4);
    check_eps(eps);
    spec.validate();
    if (!psi.value || !psi.gradient || !psi.laplacian) throw std::invalid_argument("test function is incomplete");
    const quad::SphereRuleN sphere = quad::sphere_rule(d, std::min(spec.angular_order, 8));
    const quad::GaussRule rule = quad::gauss_legendre(spec.radial_order);
    const double band_end = std::log(2.0) / eps;
    // Past the band only the first two terms remain, carried by r^d ~ e^{-d u}.
    const double u_end = band_end + 40.0;
    const auto& phi = profile();

    std::array<double, 4> acc{};
    std::vector<double> x(d);
    auto add_shell = [&](double u, double w) {
        const double r = eps * std::exp(-u);
        const double h = std::pow(r / eps, eps);
        const double cut = phi.value(h);                   // 1 - phi_eps
        const double dcut = phi.d1(h) * eps * h / r;       // d/dr phi(h)
        const double lap_cut = laplacian_of_tailored_cutoff(d, eps, r);
        const double jac = w * std::pow(r, d);             // r^{d-1} dr = r^d du
        for (std::size_t i = 0; i < sphere.size(); ++i) {
            const auto dir = sphere.point(i);
            for (int j = 0; j < d; ++j) x[j] = r * dir[j];
            const double v = psi.value(x);
            const std::vector<double> g = psi.gradient(x);
            double radial_g = 0.0;
            for (int j = 0; j < d; ++j) radial_g += g[j] * dir[j];
            const double ww = jac * sphere.weights[i];
            acc[0] += ww * (v * cut) * (v * cut);
            const double lv = psi.laplacian(x) * cut;
            acc[1] += ww * lv * lv;
            acc[2] += ww * (radial_g * dcut) * (radial_g * dcut);
            acc[3] += ww * (v * lap_cut) * (v * lap_cut);
        }
    };
    const double edges[3] = {0.0, band_end, u_end};
    for (int piece = 0; piece < 2; ++piece) {
        const double lo = edges[piece];
        const double hi = edges[piece + 1];
        const int panels = std::max(1, int(std::ceil(hi - lo)));
        const double width = (hi - lo) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = lo + (p + 0.5) * width;
            for (int k = 0; k < rule.size(); ++k) add_shell(mid + 0.5 * width * rule.nodes[k], 0.5 * width * rule.weights[k]);
        }
    }
    return {std::sqrt(acc[0]), std::sqrt(acc[1]), std::sqrt(acc[2]), std::sqrt(acc[3])};
}

std::string d1_domain_statement()
{
    return "d = 1: the closure of the Laplacian on smooth functions vanishing near 0 has domain "
           "{psi in W^{2,2}(R) : psi(0) = 0, psi'(0) = 0}; not certified numerically";
}

}  // namespace pointlab::closure
