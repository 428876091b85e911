#include "systolekit/kernels.hpp"

#include <cmath>

namespace systolekit::kernels {

namespace {

double s_min(std::span<const double> v) {
    double m = v[0];
    for (double x : v)
        if (x < m) m = x;
    return m;
}

double s_max(std::span<const double> v) {
    double m = v[0];
    for (double x : v)
        if (x > m) m = x;
    return m;
}

std::size_t s_argmax(std::span<const double> v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

void s_min_inplace(std::span<double> acc, std::span<const double> x) {
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (x[i] < acc[i]) acc[i] = x[i];
}

double s_chebyshev(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m) m = d;
    }
    return m;
}

std::size_t s_count_leq(std::span<const double> v, double bound) {
    std::size_t n = 0;
    for (double x : v)
        if (x <= bound) ++n;
    return n;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{"scalar", s_min,       s_max,         s_argmax,
                         s_min_inplace, s_chebyshev, s_count_leq};
    return ops;
}

} // namespace systolekit::kernels
