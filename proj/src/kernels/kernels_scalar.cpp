#include "memestream/kernels.hpp"

namespace memestream::kernels {
namespace {

double sparse_dot_scalar(const std::uint32_t* a_ids, const double* a_w, std::size_t a_n,
                         const std::uint32_t* b_ids, const double* b_w, std::size_t b_n) {
    double acc = 0.0;
    std::size_t i = 0, j = 0;
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

double sum_squares_scalar(const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * w[i];
    return acc;
}

std::size_t intersect_count_scalar(const std::uint32_t* a, std::size_t a_n,
                                   const std::uint32_t* b, std::size_t b_n) {
    std::size_t count = 0, i = 0, j = 0;
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

const Ops& scalar_ops() {
    static const Ops ops{sparse_dot_scalar, sum_squares_scalar, intersect_count_scalar, "scalar"};
    return ops;
}

}  // namespace memestream::kernels
