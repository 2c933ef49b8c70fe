#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace geodtn::kernels {

// All-pairs proximity scan: appends every unordered pair (i, j), i < j, with
// Euclidean distance <= range to `out`, in ascending (i, j) order.
//
// Two implementations share one contract: a scalar reference kernel and an
// AVX2 kernel selected at runtime. Both evaluate dx*dx + dy*dy with plain
// IEEE multiplies and adds (the build disables FP contraction), so their
// outputs are identical pair-for-pair and the simulation does not depend on
// which lane ran.
using ContactPairs = std::vector<std::pair<int32_t, int32_t>>;

enum class Backend { Scalar, Avx2 };

// Best backend this CPU supports.
Backend detect_backend();

// Backend used by contact_scan(); defaults to detect_backend().
Backend active_backend();
void set_backend(Backend backend);

void contact_scan(std::span<const double> x, std::span<const double> y, double range,
                  ContactPairs& out);

// Reference kernel, always available.
void contact_scan_scalar(std::span<const double> x, std::span<const double> y, double range,
                         ContactPairs& out);

// Defined to 1 by the build system when the AVX2 translation unit is part of
// the library (x86_64 and a compiler accepting -mavx2).
#ifndef GEODTN_HAVE_AVX2_KERNELS
#define GEODTN_HAVE_AVX2_KERNELS 0
#endif

#if GEODTN_HAVE_AVX2_KERNELS
void contact_scan_avx2(std::span<const double> x, std::span<const double> y, double range,
                       ContactPairs& out);
#endif

}  // namespace geodtn::kernels
