#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace systolekit::kernels {

/// Array kernels behind the scan-style inner loops (farthest-point nets,
/// Hausdorff sup-inf, Chebyshev pair scans, ball membership counts).
///
/// Every entry is required to return bit-identical results across
/// implementations: only order-independent reductions (min/max/compare/count)
/// are exposed here, so vector lanes may reassociate freely. Sums stay with
/// the callers, in fixed order. Inputs must be NaN-free; reductions require
/// non-empty spans.
struct Ops {
    const char* name;
    double (*min_value)(std::span<const double>);
    double (*max_value)(std::span<const double>);
    // First index attaining the maximum.
    std::size_t (*argmax)(std::span<const double>);
    // acc[i] = min(acc[i], x[i]).
    void (*min_inplace)(std::span<double>, std::span<const double>);
    // max_i |a[i] - b[i]|; zero for empty spans.
    double (*chebyshev)(std::span<const double>, std::span<const double>);
    std::size_t (*count_leq)(std::span<const double>, double);
};

const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
bool avx2_supported();
#endif
#if defined(__aarch64__)
const Ops& neon_ops();
#endif

/// Active implementation. Chosen once from CPU features at first use;
/// SYSTOLEKIT_KERNELS=scalar|avx2|neon|auto overrides.
const Ops& active();

/// Force a specific implementation (test hook). Throws Error("UnknownKernel")
/// if the name is not available on this machine.
void select(const std::string& name);

inline double min_value(std::span<const double> v) { return active().min_value(v); }
inline double max_value(std::span<const double> v) { return active().max_value(v); }
inline std::size_t argmax(std::span<const double> v) { return active().argmax(v); }
inline void min_inplace(std::span<double> acc, std::span<const double> x) {
    active().min_inplace(acc, x);
}
inline double chebyshev(std::span<const double> a, std::span<const double> b) {
    return active().chebyshev(a, b);
}
inline std::size_t count_leq(std::span<const double> v, double bound) {
    return active().count_leq(v, bound);
}

} // namespace systolekit::kernels
