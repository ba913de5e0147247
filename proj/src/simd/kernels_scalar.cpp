#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "pointlab/simd/kernels.hpp"

namespace pointlab::simd {

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b)
{
    if (b == Backend::Scalar) return true;
#if defined(POINTLAB_HAVE_AVX2)
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Backend active_backend()
{
    const char* forced = std::getenv("POINTLAB_SIMD");
    if (forced && std::strcmp(forced, "scalar") == 0) return Backend::Scalar;
    return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

namespace detail {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

void resolvent_scalar(const ResolventArgs& a, const PointsSoA& x, const ResolventBatch& out, std::size_t begin,
                      std::size_t end)
{
    for (std::size_t i = begin; i < end; ++i) {
        const double d1 = x.x1[i] - a.y1, d2 = x.x2[i] - a.y2, d3 = x.x3[i] - a.y3;
        const double r = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
        if (r == 0.0) {
            out.re_free[i] = out.im_free[i] = kNaN;
        } else {
            const double m = std::exp(-a.beta * r) / (kFourPi * r);
            out.re_free[i] = m * std::cos(a.alpha * r);
            out.im_free[i] = m * std::sin(a.alpha * r);
        }
        if (!a.finite) {
            out.re_extra[i] = out.im_extra[i] = 0.0;
            continue;
        }
        const double rx = std::sqrt(x.x1[i] * x.x1[i] + x.x2[i] * x.x2[i] + x.x3[i] * x.x3[i]);
        if (rx == 0.0) {
            out.re_extra[i] = out.im_extra[i] = kNaN;
            continue;
        }
        const double s = rx + a.ry;
        const double m = std::exp(-a.beta * s) / (rx * a.ry);
        const double c = m * std::cos(a.alpha * s);
        const double sn = m * std::sin(a.alpha * s);
        out.re_extra[i] = a.b_re * c - a.b_im * sn;
        out.im_extra[i] = a.b_re * sn + a.b_im * c;
    }
}

void diffracted_scalar(const DiffractedArgs& a, const PointsSoA& x, std::span<double> out, std::size_t begin,
                       std::size_t end)
{
    for (std::size_t i = begin; i < end; ++i) {
        const double rx = std::sqrt(x.x1[i] * x.x1[i] + x.x2[i] * x.x2[i] + x.x3[i] * x.x3[i]);
        if (rx == 0.0) {
            out[i] = kNaN;
            continue;
        }
        const double s = rx + a.ry;
        const double h = a.t > s ? 1.0 : (a.t == s ? 0.5 : 0.0);
        out[i] = h == 0.0 ? 0.0 : h * std::exp(a.mu * (s - a.t)) / (kFourPi * rx * a.ry);
    }
}

}  // namespace detail

namespace {

void check_sizes(const PointsSoA& x, std::size_t n_out)
{
    if (x.x2.size() != x.size() || x.x3.size() != x.size() || n_out != x.size())
        throw std::invalid_argument("batch kernel: coordinate and output arrays must have equal length");
}

}  // namespace

void resolvent_kernel_batch(Backend backend, const ExtensionParameter& param, Complex lambda, const Point3& y,
                            const PointsSoA& x, const ResolventBatch& out)
{
    check_sizes(x, out.re_free.size());
    if (out.im_free.size() != x.size() || out.re_extra.size() != x.size() || out.im_extra.size() != x.size())
        throw std::invalid_argument("batch kernel: output arrays must have equal length");
    detail::ResolventArgs a{lambda.real(), lambda.imag(), param.is_finite(), 0.0, 0.0, y[0], y[1], y[2], y.norm()};
    if (a.finite) {
        const Complex shifted = lambda + Complex(0.0, param.mu());
        if (shifted == Complex{}) throw PoleError("b(mu, lambda) has its pole at lambda = -i mu");
        const Complex b = Complex(0.0, 1.0) / (kFourPi * shifted);
        a.b_re = b.real();
        a.b_im = b.imag();
    }
#if defined(POINTLAB_HAVE_AVX2)
    if (backend == Backend::Avx2 && backend_available(Backend::Avx2)) {
        detail::resolvent_avx2(a, x, out);
        return;
    }
#endif
    (void)backend;
    detail::resolvent_scalar(a, x, out, 0, x.size());
}

void diffracted_kernel_batch(Backend backend, double mu, double t, const Point3& y, const PointsSoA& x,
                             std::span<double> out)
{
    check_sizes(x, out.size());
    if (t < 0.0) throw DomainError("wave kernels are defined for t >= 0 only");
    if (y.is_origin()) throw SingularityError("diffracted wave kernel is singular at the origin");
    const detail::DiffractedArgs a{mu, t, y.norm()};
#if defined(POINTLAB_HAVE_AVX2)
    if (backend == Backend::Avx2 && backend_available(Backend::Avx2)) {
        detail::diffracted_avx2(a, x, out);
        return;
    }
#endif
    (void)backend;
    detail::diffracted_scalar(a, x, out, 0, x.size());
}

}  // namespace pointlab::simd
