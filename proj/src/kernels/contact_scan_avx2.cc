// AVX2 lane of the proximity scan. Compiled with -mavx2 in its own TU; only
// reached after the runtime CPU check in contact_scan(). The arithmetic
// mirrors the scalar kernel operation-for-operation (sub, mul, mul, add,
// compare; no FMA), so both lanes emit identical pair lists.

#include "geodtn/kernels.h"

#if GEODTN_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <cassert>

namespace geodtn::kernels {

void contact_scan_avx2(std::span<const double> x, std::span<const double> y, double range,
                       ContactPairs& out) {
    assert(x.size() == y.size());
    const size_t n = x.size();
    const double r2s = range * range;
    const __m256d r2 = _mm256_set1_pd(r2s);

    for (size_t i = 0; i + 1 < n; ++i) {
        const __m256d xi = _mm256_set1_pd(x[i]);
        const __m256d yi = _mm256_set1_pd(y[i]);
        size_t j = i + 1;
        for (; j + 4 <= n; j += 4) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(&x[j]));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(&y[j]));
            const __m256d d2 =
                _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            int mask = _mm256_movemask_pd(_mm256_cmp_pd(d2, r2, _CMP_LE_OQ));
            while (mask != 0) {
                const int k = __builtin_ctz(static_cast<unsigned>(mask));
                out.emplace_back(static_cast<int32_t>(i), static_cast<int32_t>(j + k));
                mask &= mask - 1;
            }
        }
        for (; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double d2 = dx * dx + dy * dy;
            if (d2 <= r2s) out.emplace_back(static_cast<int32_t>(i), static_cast<int32_t>(j));
        }
    }
}

}  // namespace geodtn::kernels

#endif  // GEODTN_HAVE_AVX2_KERNELS
