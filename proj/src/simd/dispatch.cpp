#include <cstdlib>
#include <string_view>

#include "fkt/simd/kernels.hpp"

namespace fkt::simd {

const KernelSet& scalar_kernels() noexcept {
    static const KernelSet set{"scalar", &detail::step_scalar, &detail::interpolate_scalar};
    return set;
}

const KernelSet* avx2_kernels() noexcept {
#if defined(FKT_HAVE_AVX2_KERNELS)
    if (__builtin_cpu_supports("avx2")) return detail::avx2_kernel_set();
#endif
    return nullptr;
}

const KernelSet& active_kernels() noexcept {
    static const KernelSet* chosen = [] {
        const char* env = std::getenv("FKT_SIMD");
        if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
        if (const KernelSet* k = avx2_kernels()) return k;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace fkt::simd
