#include "geodtn/kernels.h"

#include <cassert>

namespace geodtn::kernels {

namespace {

Backend g_backend = detect_backend();

}  // namespace

Backend detect_backend() {
#if GEODTN_HAVE_AVX2_KERNELS
    if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
    return Backend::Scalar;
}

Backend active_backend() { return g_backend; }

void set_backend(Backend backend) {
#if !GEODTN_HAVE_AVX2_KERNELS
    backend = Backend::Scalar;
#endif
    g_backend = backend;
}

void contact_scan_scalar(std::span<const double> x, std::span<const double> y, double range,
                         ContactPairs& out) {
    assert(x.size() == y.size());
    const double r2 = range * range;
    const size_t n = x.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        for (size_t j = i + 1; j < n; ++j) {
            const double dx = xi - x[j];
            const double dy = yi - y[j];
            const double d2 = dx * dx + dy * dy;
            if (d2 <= r2) out.emplace_back(static_cast<int32_t>(i), static_cast<int32_t>(j));
        }
    }
}

void contact_scan(std::span<const double> x, std::span<const double> y, double range,
                  ContactPairs& out) {
#if GEODTN_HAVE_AVX2_KERNELS
    if (g_backend == Backend::Avx2) {
        contact_scan_avx2(x, y, range, out);
        return;
    }
#endif
    contact_scan_scalar(x, y, range, out);
}

}  // namespace geodtn::kernels
