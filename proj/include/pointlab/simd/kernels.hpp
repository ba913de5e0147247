#pragma once

// Batch evaluation of closed-form kernels over point sets, with a scalar
// reference path and an AVX2 path chosen at runtime.
//
// Points are passed as structure-of-arrays. Singular points (x = y for the
// free part, x = 0 for the extra and diffracted parts) produce NaN in the
// affected outputs; callers flag them.

#include <span>

#include "pointlab/core.hpp"

namespace pointlab::simd {

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);

/// True when the backend was compiled in and the CPU supports it.
bool backend_available(Backend b);

/// Best available backend, unless POINTLAB_SIMD=scalar forces the reference path.
Backend active_backend();

struct PointsSoA {
    std::span<const double> x1, x2, x3;
    std::size_t size() const { return x1.size(); }
};

struct ResolventBatch {
    std::span<double> re_free, im_free, re_extra, im_extra;
};

/// K(param, lambda, x_i, y) split into free and extra parts. Throws PoleError
/// when lambda = -i mu, std::invalid_argument on size mismatch.
void resolvent_kernel_batch(Backend backend, const ExtensionParameter& param, Complex lambda, const Point3& y,
                            const PointsSoA& x, const ResolventBatch& out);

/// H(t-|x_i|-|y|) e^{mu(|x_i|+|y|-t)} / (4 pi |x_i||y|), H(0) = 1/2. Throws
/// DomainError for t < 0 and SingularityError for y = 0.
void diffracted_kernel_batch(Backend backend, double mu, double t, const Point3& y, const PointsSoA& x,
                             std::span<double> out);

namespace detail {

// Parameters shared by backends, with validation done once.
struct ResolventArgs {
    double alpha, beta;  // lambda = alpha + i beta
    bool finite;
    double b_re, b_im;   // i / (4 pi (lambda + i mu))
    double y1, y2, y3, ry;
};

struct DiffractedArgs {
    double mu, t, ry;
};

// Reference loops over [begin, end).
void resolvent_scalar(const ResolventArgs& a, const PointsSoA& x, const ResolventBatch& out, std::size_t begin,
                      std::size_t end);
void diffracted_scalar(const DiffractedArgs& a, const PointsSoA& x, std::span<double> out, std::size_t begin,
                       std::size_t end);

#if defined(POINTLAB_HAVE_AVX2)
void resolvent_avx2(const ResolventArgs& a, const PointsSoA& x, const ResolventBatch& out);
void diffracted_avx2(const DiffractedArgs& a, const PointsSoA& x, std::span<double> out);
#endif

}  // namespace detail

}  // namespace pointlab::simd
