// series_avx2.cpp — AVX2/FMA kernel, four time points per iteration.
// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "tfd/kernels.hpp"

#include "tfd/errors.hpp"

#include <immintrin.h>

// glibc libmvec, AVX2 variants (vector function ABI, 4 doubles).
extern "C" {
__m256d _ZGVdN4v_sin(__m256d);
__m256d _ZGVdN4v_cos(__m256d);
__m256d _ZGVdN4v_log1p(__m256d);
}

namespace tfd::kernels::detail {

namespace {

struct ModeVec {
    __m256d half_omega, exp_m2alpha, sinh_2alpha, kappa, lambda, rate_scale;
    bool constant;
    __m256d constant_a;

    explicit ModeVec(const ModeCoefficients& m)
        : half_omega(_mm256_set1_pd(m.half_omega)),
          exp_m2alpha(_mm256_set1_pd(m.exp_m2alpha)),
          sinh_2alpha(_mm256_set1_pd(m.sinh_2alpha)),
          kappa(_mm256_set1_pd(m.kappa)),
          lambda(_mm256_set1_pd(m.lambda)),
          rate_scale(_mm256_set1_pd(m.rate_scale)),
          constant(m.rate_scale == 0.0),
          constant_a(_mm256_set1_pd((m.kappa + m.lambda) * (m.exp_m2alpha + m.sinh_2alpha)))
    {
    }
};

struct Accum {
    __m256d sum_sq = _mm256_setzero_pd();
    __m256d rate_num = _mm256_setzero_pd();
    __m256d below_clamp = _mm256_setzero_pd();  // all-ones lanes where A < 1 - tol
};

inline void add_sector(Accum& acc, __m256d a, __m256d a_dot)
{
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d d = _mm256_sub_pd(a, one);
    acc.below_clamp = _mm256_or_pd(
        acc.below_clamp, _mm256_cmp_pd(d, _mm256_set1_pd(-kClampTolerance), _CMP_LT_OQ));
    d = _mm256_max_pd(d, _mm256_setzero_pd());

    const __m256d root = _mm256_sqrt_pd(_mm256_mul_pd(d, _mm256_add_pd(d, two)));
    const __m256d ac = _ZGVdN4v_log1p(_mm256_add_pd(d, root));
    acc.sum_sq = _mm256_fmadd_pd(ac, ac, acc.sum_sq);

    const __m256d series = _mm256_fnmadd_pd(d, _mm256_set1_pd(1.0 / 3.0), one);
    const __m256d use_series = _mm256_cmp_pd(d, _mm256_set1_pd(kRatioSeriesThreshold), _CMP_LT_OQ);
    // Lanes with root == 0 take the series branch, so the 0/0 there is discarded.
    const __m256d ratio = _mm256_blendv_pd(_mm256_div_pd(ac, root), series, use_series);
    acc.rate_num = _mm256_fmadd_pd(ratio, a_dot, acc.rate_num);
}

inline void add_mode(Accum& acc, const ModeVec& m, __m256d t)
{
    if (m.constant) {
        add_sector(acc, m.constant_a, _mm256_setzero_pd());
        add_sector(acc, m.constant_a, _mm256_setzero_pd());
        return;
    }
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d half_phase = _mm256_mul_pd(m.half_omega, t);
    const __m256d sh = _ZGVdN4v_sin(half_phase);
    const __m256d ch = _ZGVdN4v_cos(half_phase);
    const __m256d p = _mm256_mul_pd(two, _mm256_mul_pd(ch, ch));
    const __m256d q = _mm256_mul_pd(two, _mm256_mul_pd(sh, sh));
    const __m256d sin_phase = _mm256_mul_pd(two, _mm256_mul_pd(sh, ch));

    const __m256d ep = _mm256_fmadd_pd(m.sinh_2alpha, p, m.exp_m2alpha);
    const __m256d eq = _mm256_fmadd_pd(m.sinh_2alpha, q, m.exp_m2alpha);
    const __m256d a_plus = _mm256_fmadd_pd(m.kappa, ep, _mm256_mul_pd(m.lambda, eq));
    const __m256d a_minus = _mm256_fmadd_pd(m.kappa, eq, _mm256_mul_pd(m.lambda, ep));
    const __m256d a_dot = _mm256_mul_pd(m.rate_scale, sin_phase);

    add_sector(acc, a_plus, _mm256_sub_pd(_mm256_setzero_pd(), a_dot));
    add_sector(acc, a_minus, a_dot);
}

} // namespace

void series_avx2(const SeriesCoefficients& coeffs, std::span<const double> times,
                 std::span<double> c, std::span<double> cdot)
{
    const ModeVec mode1(coeffs.modes[0]);
    const ModeVec mode2(coeffs.modes[1]);
    const std::size_t n = times.size();
    const std::size_t vec_end = n - n % 4;

    __m256d below_clamp = _mm256_setzero_pd();
    __m256d singular = _mm256_setzero_pd();
    for (std::size_t j = 0; j < vec_end; j += 4) {
        const __m256d t = _mm256_loadu_pd(times.data() + j);
        Accum acc;
        add_mode(acc, mode1, t);
        add_mode(acc, mode2, t);
        below_clamp = _mm256_or_pd(below_clamp, acc.below_clamp);

        const __m256d zero = _mm256_setzero_pd();
        const __m256d cv = _mm256_sqrt_pd(_mm256_mul_pd(_mm256_set1_pd(0.5), acc.sum_sq));
        const __m256d c_zero = _mm256_cmp_pd(cv, zero, _CMP_EQ_OQ);
        singular = _mm256_or_pd(singular,
                                _mm256_and_pd(c_zero, _mm256_cmp_pd(acc.rate_num, zero, _CMP_NEQ_OQ)));
        const __m256d rate = _mm256_div_pd(acc.rate_num, _mm256_add_pd(cv, cv));
        _mm256_storeu_pd(c.data() + j, cv);
        _mm256_storeu_pd(cdot.data() + j, _mm256_blendv_pd(rate, zero, c_zero));
    }
    if (_mm256_movemask_pd(below_clamp) != 0) {
        throw NumericError("relative covariance sector value fell below 1 beyond the clamp tolerance");
    }
    if (_mm256_movemask_pd(singular) != 0) {
        throw SingularRateError("complexity vanishes while its rate numerator does not");
    }
    for (std::size_t j = vec_end; j < n; ++j) {
        const ComplexitySample s = evaluate_sample(coeffs, times[j]);
        c[j] = s.c;
        cdot[j] = s.cdot;
    }
}

} // namespace tfd::kernels::detail
