// NEON variants of the array kernels (aarch64 only).

#if defined(__aarch64__)

#include "systolekit/kernels.hpp"

#include <arm_neon.h>
#include <cmath>

namespace systolekit::kernels {

namespace {

double v_min(std::span<const double> v) {
    std::size_t i = 0;
    const std::size_t n = v.size();
    double m = v[0];
    if (n >= 2) {
        float64x2_t acc = vld1q_f64(v.data());
        for (i = 2; i + 2 <= n; i += 2)
            acc = vminq_f64(acc, vld1q_f64(v.data() + i));
        m = vminvq_f64(acc);
    }
    for (; i < n; ++i)
        if (v[i] < m) m = v[i];
    return m;
}

double v_max(std::span<const double> v) {
    std::size_t i = 0;
    const std::size_t n = v.size();
    double m = v[0];
    if (n >= 2) {
        float64x2_t acc = vld1q_f64(v.data());
        for (i = 2; i + 2 <= n; i += 2)
            acc = vmaxq_f64(acc, vld1q_f64(v.data() + i));
        m = vmaxvq_f64(acc);
    }
    for (; i < n; ++i)
        if (v[i] > m) m = v[i];
    return m;
}

std::size_t v_argmax(std::span<const double> v) {
    const double m = v_max(v);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == m) return i;
    return 0;
}

void v_min_inplace(std::span<double> acc, std::span<const double> x) {
    std::size_t i = 0;
    const std::size_t n = acc.size();
    for (; i + 2 <= n; i += 2)
        vst1q_f64(acc.data() + i, vminq_f64(vld1q_f64(acc.data() + i), vld1q_f64(x.data() + i)));
    for (; i < n; ++i)
        if (x[i] < acc[i]) acc[i] = x[i];
}

double v_chebyshev(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vmaxq_f64(acc, vabdq_f64(vld1q_f64(a.data() + i), vld1q_f64(b.data() + i)));
    double m = (i > 0) ? vmaxvq_f64(acc) : 0.0;
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

std::size_t v_count_leq(std::span<const double> v, double bound) {
    std::size_t count = 0;
    for (double x : v)
        if (x <= bound) ++count;
    return count;
}

} // namespace

const Ops& neon_ops() {
    static const Ops ops{"neon", v_min,        v_max,        v_argmax,
                         v_min_inplace, v_chebyshev, v_count_leq};
    return ops;
}

} // namespace systolekit::kernels

#endif // __aarch64__
