// AVX2 + FMA variants of the batch kernels. Compiled with -mavx2 -mfma and
// only called after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "pointlab/simd/kernels.hpp"

namespace pointlab::simd::detail {

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256i lanes_as_int64(__m256d integral)
{
    return _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(integral));
}

// e^x for |x| <= 700: x = n ln2 + r, |r| <= ln2 / 2, Taylor to degree 13.
inline __m256d exp_pd(__m256d x)
{
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, splat(1.4426950408889634074)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, splat(6.93147180369123816490e-01), x);
    r = _mm256_fnmadd_pd(n, splat(1.90821492927058770002e-10), r);
    static constexpr double inv_fact[14] = {1.0,
                                            1.0,
                                            1.0 / 2,
                                            1.0 / 6,
                                            1.0 / 24,
                                            1.0 / 120,
                                            1.0 / 720,
                                            1.0 / 5040,
                                            1.0 / 40320,
                                            1.0 / 362880,
                                            1.0 / 3628800,
                                            1.0 / 39916800,
                                            1.0 / 479001600,
                                            1.0 / 6227020800.0};
    __m256d p = splat(inv_fact[13]);
    for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, splat(inv_fact[k]));
    __m256i e = _mm256_add_epi64(lanes_as_int64(n), _mm256_set1_epi64x(1023));
    e = _mm256_slli_epi64(e, 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(e));
}

// sin and cos for |x| <= 1e5: three-part Cody-Waite reduction by pi/2.
inline void sincos_pd(__m256d x, __m256d& s, __m256d& c)
{
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, splat(6.36619772367581382433e-01)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, splat(1.57079632673412561417e+00), x);
    r = _mm256_fnmadd_pd(q, splat(6.07710050630396597660e-11), r);
    r = _mm256_fnmadd_pd(q, splat(2.02226624871116645580e-21), r);
    const __m256d r2 = _mm256_mul_pd(r, r);

    // sin: odd terms through r^17; cos: even terms through r^18.
    static constexpr double sin_c[8] = {-1.0 / 6,
                                        1.0 / 120,
                                        -1.0 / 5040,
                                        1.0 / 362880,
                                        -1.0 / 39916800,
                                        1.0 / 6227020800.0,
                                        -1.0 / 1307674368000.0,
                                        1.0 / 355687428096000.0};
    static constexpr double cos_c[9] = {-1.0 / 2,
                                        1.0 / 24,
                                        -1.0 / 720,
                                        1.0 / 40320,
                                        -1.0 / 3628800,
                                        1.0 / 479001600,
                                        -1.0 / 87178291200.0,
                                        1.0 / 20922789888000.0,
                                        -1.0 / 6402373705728000.0};
    __m256d ps = splat(sin_c[7]);
    for (int k = 6; k >= 0; --k) ps = _mm256_fmadd_pd(ps, r2, splat(sin_c[k]));
    ps = _mm256_fmadd_pd(_mm256_mul_pd(ps, r2), r, r);
    __m256d pc = splat(cos_c[8]);
    for (int k = 7; k >= 0; --k) pc = _mm256_fmadd_pd(pc, r2, splat(cos_c[k]));
    pc = _mm256_fmadd_pd(pc, r2, splat(1.0));

    const __m256i qi = lanes_as_int64(q);
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, one), one));
    const __m256d neg_s = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(qi, two), two));
    const __m256d neg_c =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(qi, one), two), two));
    const __m256d sign = splat(-0.0);
    s = _mm256_blendv_pd(ps, pc, swap);
    c = _mm256_blendv_pd(pc, ps, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, sign));
    c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, sign));
}

inline bool all_within(__m256d v, double bound)
{
    const __m256d a = _mm256_andnot_pd(splat(-0.0), v);
    // Ordered compare: NaN lanes fail too.
    return _mm256_movemask_pd(_mm256_cmp_pd(a, splat(bound), _CMP_LE_OQ)) == 0xF;
}

inline __m256d norm3(__m256d a, __m256d b, __m256d c)
{
    return _mm256_sqrt_pd(_mm256_fmadd_pd(a, a, _mm256_fmadd_pd(b, b, _mm256_mul_pd(c, c))));
}

constexpr double kExpBound = 700.0;
constexpr double kTrigBound = 1.0e5;

}  // namespace

void resolvent_avx2(const ResolventArgs& a, const PointsSoA& x, const ResolventBatch& out)
{
    const std::size_t n = x.size();
    const std::size_t full = n - n % 4;
    const __m256d nan = splat(std::numeric_limits<double>::quiet_NaN());
    const __m256d zero = _mm256_setzero_pd();
    const __m256d alpha = splat(a.alpha), beta = splat(a.beta);
    const __m256d inv4pi = splat(1.0 / kFourPi);
    for (std::size_t i = 0; i < full; i += 4) {
        const __m256d p1 = _mm256_loadu_pd(&x.x1[i]);
        const __m256d p2 = _mm256_loadu_pd(&x.x2[i]);
        const __m256d p3 = _mm256_loadu_pd(&x.x3[i]);
        const __m256d r = norm3(_mm256_sub_pd(p1, splat(a.y1)), _mm256_sub_pd(p2, splat(a.y2)),
                                _mm256_sub_pd(p3, splat(a.y3)));
        const __m256d rx = norm3(p1, p2, p3);
        const __m256d s = _mm256_add_pd(rx, splat(a.ry));
        const __m256d e_free = _mm256_mul_pd(_mm256_sub_pd(zero, beta), r);
        const __m256d e_extra = _mm256_mul_pd(_mm256_sub_pd(zero, beta), s);
        const __m256d w_free = _mm256_mul_pd(alpha, r);
        const __m256d w_extra = _mm256_mul_pd(alpha, s);
        if (!all_within(e_free, kExpBound) || !all_within(w_free, kTrigBound) ||
            (a.finite && (!all_within(e_extra, kExpBound) || !all_within(w_extra, kTrigBound)))) {
            resolvent_scalar(a, x, out, i, i + 4);
            continue;
        }
        __m256d sn, cs;
        sincos_pd(w_free, sn, cs);
        const __m256d m = _mm256_div_pd(_mm256_mul_pd(exp_pd(e_free), inv4pi), r);
        const __m256d diag = _mm256_cmp_pd(r, zero, _CMP_EQ_OQ);
        _mm256_storeu_pd(&out.re_free[i], _mm256_blendv_pd(_mm256_mul_pd(m, cs), nan, diag));
        _mm256_storeu_pd(&out.im_free[i], _mm256_blendv_pd(_mm256_mul_pd(m, sn), nan, diag));
        if (!a.finite) {
            _mm256_storeu_pd(&out.re_extra[i], zero);
            _mm256_storeu_pd(&out.im_extra[i], zero);
            continue;
        }
        sincos_pd(w_extra, sn, cs);
        const __m256d me = _mm256_div_pd(exp_pd(e_extra), _mm256_mul_pd(rx, splat(a.ry)));
        const __m256d c = _mm256_mul_pd(me, cs);
        const __m256d sv = _mm256_mul_pd(me, sn);
        const __m256d re = _mm256_fmsub_pd(splat(a.b_re), c, _mm256_mul_pd(splat(a.b_im), sv));
        const __m256d im = _mm256_fmadd_pd(splat(a.b_re), sv, _mm256_mul_pd(splat(a.b_im), c));
        const __m256d origin = _mm256_cmp_pd(rx, zero, _CMP_EQ_OQ);
        _mm256_storeu_pd(&out.re_extra[i], _mm256_blendv_pd(re, nan, origin));
        _mm256_storeu_pd(&out.im_extra[i], _mm256_blendv_pd(im, nan, origin));
    }
    resolvent_scalar(a, x, out, full, n);
}

void diffracted_avx2(const DiffractedArgs& a, const PointsSoA& x, std::span<double> out)
{
    const std::size_t n = x.size();
    const std::size_t full = n - n % 4;
    const __m256d nan = splat(std::numeric_limits<double>::quiet_NaN());
    const __m256d zero = _mm256_setzero_pd();
    const __m256d t = splat(a.t), ry = splat(a.ry);
    for (std::size_t i = 0; i < full; i += 4) {
        const __m256d rx = norm3(_mm256_loadu_pd(&x.x1[i]), _mm256_loadu_pd(&x.x2[i]), _mm256_loadu_pd(&x.x3[i]));
        const __m256d s = _mm256_add_pd(rx, ry);
        const __m256d after = _mm256_cmp_pd(t, s, _CMP_GT_OQ);
        const __m256d on = _mm256_cmp_pd(t, s, _CMP_EQ_OQ);
        const __m256d h = _mm256_or_pd(_mm256_and_pd(after, splat(1.0)), _mm256_and_pd(on, splat(0.5)));
        const __m256d live = _mm256_or_pd(after, on);
        const __m256d arg = _mm256_and_pd(live, _mm256_mul_pd(splat(a.mu), _mm256_sub_pd(s, t)));
        if (!all_within(arg, kExpBound)) {
            diffracted_scalar(a, x, out, i, i + 4);
            continue;
        }
        const __m256d v = _mm256_div_pd(_mm256_mul_pd(h, exp_pd(arg)), _mm256_mul_pd(splat(kFourPi), _mm256_mul_pd(rx, ry)));
        const __m256d origin = _mm256_cmp_pd(rx, zero, _CMP_EQ_OQ);
        _mm256_storeu_pd(&out[i], _mm256_blendv_pd(_mm256_and_pd(live, v), nan, origin));
    }
    diffracted_scalar(a, x, out, full, n);
}

}  // namespace pointlab::simd::detail
