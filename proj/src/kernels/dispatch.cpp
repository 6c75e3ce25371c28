#include "memestream/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace memestream::kernels {

#if defined(MEMESTREAM_HAVE_AVX2)
const Ops& avx2_ops_unchecked();
#endif

const Ops* avx2_ops() {
#if defined(MEMESTREAM_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return &avx2_ops_unchecked();
#endif
    return nullptr;
}

const Ops& active() {
    static const Ops& chosen = []() -> const Ops& {
        const char* force = std::getenv("MEMESTREAM_KERNELS");
        const Ops* avx2 = avx2_ops();
        if (force != nullptr) {
            if (std::strcmp(force, "scalar") == 0) return scalar_ops();
            if (std::strcmp(force, "avx2") == 0 && avx2 != nullptr) return *avx2;
        }
        return avx2 != nullptr ? *avx2 : scalar_ops();
    }();
    return chosen;
}

}  // namespace memestream::kernels
