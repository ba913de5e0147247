#include "pointlab/oracle.hpp"

#include <algorithm>

#include "pointlab/finite_difference.hpp"
#include "pointlab/quadrature.hpp"
#include "pointlab/resolvent.hpp"
#include "pointlab/spectrum.hpp"

namespace pointlab::oracle {

ReconstructionReport make_report(Complex reconstructed, Complex closed_form, const QuadratureSpec& spec)
{
    ReconstructionReport rep;
    rep.reconstructed = reconstructed;
    rep.closed_form = closed_form;
    rep.abs_error = std::abs(reconstructed - closed_form);
    if (closed_form != Complex{}) rep.rel_error = rep.abs_error / std::abs(closed_form);
    rep.spec_used = spec;
    return rep;
}

ReconstructionReport fourier_radial_check(Complex lambda, double r, const QuadratureSpec& spec)
{
    spec.validate();
    if (!(lambda.real() > 0.0)) throw DomainError("fourier_radial_check needs Re(lambda) > 0");
    if (!(r > 0.0)) throw std::invalid_argument("fourier_radial_check needs r > 0");
    const Complex lam2 = lambda * lambda;
    auto amplitude = [&](double rho) -> Complex { return rho / (rho * rho + lam2); };
    const Complex integral = quad::sine_transform(amplitude, r, spec);
    const Complex recon = integral / (2.0 * kPi * kPi * r);
    return make_report(recon, std::exp(-lambda * r) / (kFourPi * r), spec);
}

double eigen_term(double mu, double t, const Point3& x, const Point3& y)
{
    if (!(mu < 0.0)) throw DomainError("eigen term exists only for mu < 0");
    return std::sinh(mu * t) / mu * spectrum::projection_kernel(mu, x, y);
}

namespace {

// Panel counts that keep every panel below half the shortest oscillation
// period and below |mu| / 2 where 1 / (lambda^2 + mu^2) varies.
int panel_count(double length, double frequency, double mu)
{
    double width = frequency > 0.0 ? kPi / frequency : length;
    if (mu != 0.0) width = std::min(width, 0.5 * std::abs(mu));
    width = std::min(width, 1.0);
    return std::max(16, int(std::ceil(length / width)));
}

}  // namespace

ReconstructionReport reconstruct_diffracted_kernel(double mu, double t, const Point3& x, const Point3& y, double R,
                                                   const QuadratureSpec& spec, const CutoffProfile& mollifier,
                                                   bool include_eigen_term)
{
    spec.validate();
    if (t < 0.0) throw DomainError("reconstruction needs t >= 0");
    if (!(R > 0.0)) throw std::invalid_argument("reconstruction needs R > 0");
    const double a = x.norm();
    const double b = y.norm();
    if (a == 0.0 || b == 0.0) throw SingularityError("diffracted kernel is singular at the origin");
    const double s = a + b;

    // lambda and -lambda paired: sin(t l)[e^{ils}/(l+i mu) + e^{-ils}/(l-i mu)]
    // = 2 sin(t l)(l cos(l s) + mu sin(l s)) / (l^2 + mu^2).
    auto integrand = [&](double l) {
        const double damp = mollifier.value(l * l / R);
        if (damp == 0.0) return 0.0;
        return 2.0 * std::sin(t * l) * (l * std::cos(l * s) + mu * std::sin(l * s)) / (l * l + mu * mu) * damp;
    };
    const double upper = std::sqrt(R * mollifier.outer());
    const quad::GaussRule rule = quad::gauss_legendre(spec.radial_order);
    const double integral = quad::fixed_panels(integrand, 0.0, upper, panel_count(upper, t + s, mu), rule);
    double recon = integral / (4.0 * kPi * kPi * a * b);
    if (mu < 0.0 && include_eigen_term) recon += eigen_term(mu, t, x, y);

    const double heaviside = t > s ? 1.0 : (t == s ? 0.5 : 0.0);
    const double closed = heaviside * std::exp(mu * (s - t)) / (kFourPi * a * b);
    return make_report(recon, closed, spec);
}

ReconstructionReport dirichlet_integral_check(double a, double R, const QuadratureSpec& spec,
                                              const CutoffProfile& mollifier)
{
    spec.validate();
    if (!(R > 0.0)) throw std::invalid_argument("dirichlet check needs R > 0");
    auto integrand = [&](double l) { return std::sin(a * l) / l * mollifier.value(l * l / R); };
    const double upper = std::sqrt(R * mollifier.outer());
    const quad::GaussRule rule = quad::gauss_legendre(spec.radial_order);
    // Even integrand: twice the half-line.
    const double value = 2.0 * quad::fixed_panels(integrand, 0.0, upper, panel_count(upper, std::abs(a), 0.0), rule);
    const double closed = a > 0.0 ? kPi : (a < 0.0 ? -kPi : 0.0);
    return make_report(value, closed, spec);
}

ReconstructionReport residue_check(double mu, double s, const QuadratureSpec& spec, double circle_radius)
{
    spec.validate();
    if (mu == 0.0) throw std::invalid_argument("residue check needs mu != 0");
    if (s == 0.0) throw std::invalid_argument("residue check needs s != 0");
    if (!(circle_radius > 0.0)) throw std::invalid_argument("residue check needs a positive circle radius");
    const Complex i(0.0, 1.0);
    const Complex pole = -i * mu;
    const int n = std::max(64, 2 * spec.angular_order);
    Complex sum{};
    for (int k = 0; k < n; ++k) {
        const Complex dir = std::polar(1.0, 2.0 * kPi * k / n);
        const Complex lam = pole + circle_radius * dir;
        const Complex shifted = lam + i * mu;
        sum += std::exp(i * lam * s) / (shifted * shifted) * (i * circle_radius * dir);
    }
    const Complex integral = sum * (2.0 * kPi / n);
    return make_report(integral, 2.0 * kPi * i * (i * s * std::exp(mu * s)), spec);
}

ResidualSummary pde_residual_sweep(const ResidualProblem& problem, std::span<const Point3> points, double h)
{
    if (points.empty()) throw std::invalid_argument("residual sweep needs sample points");
    if (!(h > 0.0)) throw std::invalid_argument("residual sweep needs h > 0");
    ResidualSummary out;
    out.residuals.reserve(points.size());

    for (const Point3& x : points) {
        double res = 0.0;
        switch (problem.kind) {
        case ResidualKind::Resolvent: {
            const ComplexFrequency lambda(problem.lambda);
            auto k = [&](const Point3& p) { return resolvent::resolvent_kernel(problem.parameter, lambda, p, problem.source).total; };
            const Complex centre = k(x);
            const Complex lap = fd_laplacian3(k, x, h);
            res = std::abs(lap - problem.lambda * problem.lambda * centre) / std::abs(centre);
            break;
        }
        case ResidualKind::Eigen: {
            const double mu = problem.parameter.mu();
            auto v = [&](const Point3& p) { return spectrum::eigenfunction(mu, p); };
            const double centre = v(x);
            res = std::abs(fd_laplacian3(v, x, h) + mu * mu * centre) / std::abs(centre);
            break;
        }
        case ResidualKind::Wave: {
            if (problem.t - h < 0.0) throw std::invalid_argument("wave residual needs t >= h");
            auto u_at = [&](double t, const Point3& p) {
                return propagator::wave_solution(problem.parameter, t, problem.data, p, problem.spec);
            };
            const double utt = fd_second_derivative([&](double t) { return u_at(t, x); }, problem.t, h);
            const double lap = fd_laplacian3([&](const Point3& p) { return u_at(problem.t, p); }, x, h);
            res = std::abs(utt + lap);
            break;
        }
        }
        out.residuals.push_back(res);
    }

    std::vector<double> sorted = out.residuals;
    std::sort(sorted.begin(), sorted.end());
    out.max = sorted.back();
    const std::size_t n = sorted.size();
    out.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return out;
}

}  // namespace pointlab::oracle
