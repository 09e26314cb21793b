#include <cstdlib>
#include <string_view>

#include "pmfd/kernels.hpp"

namespace pmfd::kernels {

#if defined(PMFD_WITH_AVX2)
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table() {
#if defined(PMFD_WITH_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    if (supported) return &avx2_kernels();
#endif
    return nullptr;
}

const KernelTable& active() {
    static const KernelTable& table = [] () -> const KernelTable& {
        const char* env = std::getenv("PMFD_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
        if (const KernelTable* t = avx2_table()) return *t;
        return scalar_table();
    }();
    return table;
}

}  // namespace pmfd::kernels
