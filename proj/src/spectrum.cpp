#include "pointlab/spectrum.hpp"

#include "pointlab/quadrature.hpp"

namespace pointlab::spectrum {

SpectralData spectrum_of(const ExtensionParameter& param)
{
    SpectralData data;
    data.parameter = param;
    if (param.is_friedrichs()) return data;
    const double mu = param.mu();
    if (mu < 0.0)
        data.eigenvalues.push_back(-mu * mu);
    else
        data.resonance = Complex(0.0, -mu);
    return data;
}

namespace {
void require_bound_state(double mu)
{
    if (!(mu < 0.0)) throw DomainError("mu >= 0: e^{mu|x|}/|x| is not square integrable, no eigenvalue");
}
}  // namespace

double eigenfunction(double mu, const Point3& x)
{
    require_bound_state(mu);
    const double r = x.norm();
    if (r == 0.0) throw SingularityError("eigenfunction is singular at the origin");
    return std::sqrt(-mu / (2.0 * kPi)) * std::exp(mu * r) / r;
}

double eigenfunction_norm_sq_unnormalized(double mu, const QuadratureSpec& spec)
{
    if (!(mu < 0.0)) throw DomainError("norm of e^{mu|x|}/|x| diverges for mu >= 0");
    spec.validate();
    auto integrand = [mu](double r) {
        const double v = std::exp(mu * r) / r;
        return v * v * r * r;
    };
    return 4.0 * kPi * quad::integrate_decaying(integrand, 0.0, 1.0 / std::abs(mu), spec);
}

double projection_kernel(double mu, const Point3& x, const Point3& y)
{
    require_bound_state(mu);
    const double rx = x.norm();
    const double ry = y.norm();
    if (rx == 0.0 || ry == 0.0) throw SingularityError("projection kernel is singular at the origin");
    return -mu * std::exp(mu * (rx + ry)) / (2.0 * kPi * rx * ry);
}

}  // namespace pointlab::spectrum
