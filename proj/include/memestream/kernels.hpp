#pragma once

#include <cstddef>
#include <cstdint>

namespace memestream::kernels {

// Inner-loop primitives over sorted-unique u32 id arrays with parallel
// weight arrays. The scalar implementations are the reference; SIMD
// variants must produce identical results (bit-exact for sparse_dot and
// intersect_count, which accumulate in the same order as scalar).
struct Ops {
    // dot product of two sparse vectors given as (sorted ids, weights)
    double (*sparse_dot)(const std::uint32_t* a_ids, const double* a_w, std::size_t a_n,
                         const std::uint32_t* b_ids, const double* b_w, std::size_t b_n);
    // sum of squared weights (squared L2 norm)
    double (*sum_squares)(const double* w, std::size_t n);
    // |A ∩ B| for sorted-unique id arrays
    std::size_t (*intersect_count)(const std::uint32_t* a, std::size_t a_n,
                                   const std::uint32_t* b, std::size_t b_n);
    const char* name;
};

const Ops& scalar_ops();

// Null when the binary or the CPU lacks AVX2 support.
const Ops* avx2_ops();

// Implementation chosen once at startup: AVX2 when available, else scalar.
// MEMESTREAM_KERNELS=scalar|avx2 in the environment forces a variant
// (forcing avx2 on an unsupported CPU falls back to scalar).
const Ops& active();

}  // namespace memestream::kernels
