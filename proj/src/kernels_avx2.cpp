// AVX2 variants of the array kernels. Compiled with -mavx2 for this file
// only; callers go through the runtime dispatch in kernels.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include "systolekit/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace systolekit::kernels {

namespace {

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    m = _mm_min_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    m = _mm_max_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

double v_min(std::span<const double> v) {
    std::size_t i = 0;
    const std::size_t n = v.size();
    double m = v[0];
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(v.data());
        for (i = 4; i + 4 <= n; i += 4)
            acc = _mm256_min_pd(acc, _mm256_loadu_pd(v.data() + i));
        m = hmin(acc);
    }
    for (; i < n; ++i)
        if (v[i] < m) m = v[i];
    return m;
}

double v_max(std::span<const double> v) {
    std::size_t i = 0;
    const std::size_t n = v.size();
    double m = v[0];
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(v.data());
        for (i = 4; i + 4 <= n; i += 4)
            acc = _mm256_max_pd(acc, _mm256_loadu_pd(v.data() + i));
        m = hmax(acc);
    }
    for (; i < n; ++i)
        if (v[i] > m) m = v[i];
    return m;
}

std::size_t v_argmax(std::span<const double> v) {
    const double m = v_max(v);
    const std::size_t n = v.size();
    const __m256d target = _mm256_set1_pd(m);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(v.data() + i);
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(x, target, _CMP_EQ_OQ));
        if (mask) return i + static_cast<std::size_t>(__builtin_ctz(mask));
    }
    for (; i < n; ++i)
        if (v[i] == m) return i;
    return 0; // unreachable for NaN-free input
}

void v_min_inplace(std::span<double> acc, std::span<const double> x) {
    std::size_t i = 0;
    const std::size_t n = acc.size();
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(acc.data() + i);
        __m256d b = _mm256_loadu_pd(x.data() + i);
        _mm256_storeu_pd(acc.data() + i, _mm256_min_pd(a, b));
    }
    for (; i < n; ++i)
        if (x[i] < acc[i]) acc[i] = x[i];
}

double v_chebyshev(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
        acc = _mm256_max_pd(acc, _mm256_and_pd(d, absmask));
    }
    double m = (i > 0) ? hmax(acc) : 0.0;
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

std::size_t v_count_leq(std::span<const double> v, double bound) {
    const std::size_t n = v.size();
    const __m256d t = _mm256_set1_pd(bound);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(v.data() + i);
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(x, t, _CMP_LE_OQ));
        count += static_cast<std::size_t>(__builtin_popcount(mask));
    }
    for (; i < n; ++i)
        if (v[i] <= bound) ++count;
    return count;
}

} // namespace

const Ops& avx2_ops() {
    static const Ops ops{"avx2", v_min,        v_max,        v_argmax,
                         v_min_inplace, v_chebyshev, v_count_leq};
    return ops;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

} // namespace systolekit::kernels

#endif // x86_64
