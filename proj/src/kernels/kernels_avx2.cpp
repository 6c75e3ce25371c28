// AVX2 variants of the sparse kernels. Matches in sparse_dot and
// intersect_count are found in increasing id order, exactly like the scalar
// merge, so those two are bit-exact against the reference; sum_squares
// accumulates in 4 lanes and may differ from scalar by normal FP reassociation
// (exact anyway for the integral TF weights the pipeline produces).
#include "memestream/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace memestream::kernels {
namespace {

double sparse_dot_avx2(const std::uint32_t* a_ids, const double* a_w, std::size_t a_n,
                       const std::uint32_t* b_ids, const double* b_w, std::size_t b_n) {
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a_n && j + 8 <= b_n) {
        const __m256i block = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b_ids + j));
        const std::uint32_t bmax = b_ids[j + 7];
        while (i < a_n && a_ids[i] <= bmax) {
            const __m256i probe = _mm256_set1_epi32(static_cast<int>(a_ids[i]));
            const int m = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(probe, block)));
            if (m != 0) {
                const int lane = __builtin_ctz(static_cast<unsigned>(m));
                acc += a_w[i] * b_w[j + static_cast<std::size_t>(lane)];
            }
            ++i;
        }
        j += 8;
    }
    while (i < a_n && j < b_n) {
        const std::uint32_t av = a_ids[i], bv = b_ids[j];
        if (av == bv) {
            acc += a_w[i] * b_w[j];
            ++i;
            ++j;
        } else if (av < bv) {
            ++i;
        } else {
            ++j;
        }
    }
    return acc;
}

double sum_squares_avx2(const double* w, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(w + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
    for (; i < n; ++i) total += w[i] * w[i];
    return total;
}

std::size_t intersect_count_avx2(const std::uint32_t* a, std::size_t a_n,
                                 const std::uint32_t* b, std::size_t b_n) {
    std::size_t count = 0, i = 0, j = 0;
    while (i < a_n && j + 8 <= b_n) {
        const __m256i block = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
        const std::uint32_t bmax = b[j + 7];
        while (i < a_n && a[i] <= bmax) {
            const __m256i probe = _mm256_set1_epi32(static_cast<int>(a[i]));
            const int m = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(probe, block)));
            count += static_cast<std::size_t>(m != 0);
            ++i;
        }
        j += 8;
    }
    while (i < a_n && j < b_n) {
        const std::uint32_t av = a[i], bv = b[j];
        if (av == bv) {
            ++count;
            ++i;
            ++j;
        } else if (av < bv) {
            ++i;
        } else {
            ++j;
        }
    }
    return count;
}

}  // namespace

const Ops& avx2_ops_unchecked() {
    static const Ops ops{sparse_dot_avx2, sum_squares_avx2, intersect_count_avx2, "avx2"};
    return ops;
}

}  // namespace memestream::kernels

#endif  // x86_64
