#include "systolekit/kernels.hpp"

#include "systolekit/errors.hpp"

#include <atomic>
#include <cstdlib>

namespace systolekit::kernels {

namespace {

const Ops* pick(const std::string& name) {
    if (name == "scalar") return &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!avx2_supported()) fail("UnknownKernel", "avx2 requested but not supported by this CPU");
        return &avx2_ops();
    }
#endif
#if defined(__aarch64__)
    if (name == "neon") return &neon_ops();
#endif
    if (name == "auto") {
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_supported()) return &avx2_ops();
#endif
#if defined(__aarch64__)
        return &neon_ops();
#endif
        return &scalar_ops();
    }
    fail("UnknownKernel", "no kernel implementation named '" + name + "'");
}

std::atomic<const Ops*> g_active{nullptr};

const Ops* init() {
    const char* env = std::getenv("SYSTOLEKIT_KERNELS");
    return pick(env ? std::string(env) : std::string("auto"));
}

} // namespace

const Ops& active() {
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = init();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

void select(const std::string& name) {
    g_active.store(pick(name), std::memory_order_release);
}

} // namespace systolekit::kernels
