#include "systolekit/parallel.hpp"

#include <atomic>

namespace systolekit::parallel {

namespace {
std::atomic<int> g_workers{0};
}

void set_workers(int n) { g_workers.store(n < 0 ? 0 : n); }

int workers() {
    int n = g_workers.load();
    if (n == 0) {
        unsigned hc = std::thread::hardware_concurrency();
        n = hc == 0 ? 1 : static_cast<int>(hc);
    }
    return n;
}

} // namespace systolekit::parallel
