#include <atomic>
#include <cstdlib>
#include <string_view>

#include "reqnet/kernels/bitset.hpp"

namespace reqnet::kernels {

#if defined(REQNET_HAVE_AVX2)
namespace detail {
const BitsetKernels& avx2_table();
}
#endif

namespace {

std::atomic<Backend> g_forced{Backend::automatic};

bool cpu_has_avx2() {
#if defined(REQNET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
    return false;
#endif
}

const BitsetKernels& pick(Backend b) {
    const BitsetKernels* simd = avx2_kernels();
    switch (b) {
        case Backend::scalar: return scalar_kernels();
        case Backend::avx2: return simd ? *simd : scalar_kernels();
        case Backend::automatic: break;
    }
    if (const char* env = std::getenv("REQNET_SIMD")) {
        const std::string_view v(env);
        if (v == "scalar") return scalar_kernels();
        if (v == "avx2" && simd) return *simd;
    }
    return simd ? *simd : scalar_kernels();
}

}  // namespace

const BitsetKernels* avx2_kernels() {
#if defined(REQNET_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

std::vector<const BitsetKernels*> available_kernels() {
    std::vector<const BitsetKernels*> out{&scalar_kernels()};
    if (auto* k = avx2_kernels()) out.push_back(k);
    return out;
}

const BitsetKernels& active_kernels() { return pick(g_forced.load(std::memory_order_relaxed)); }

void force_backend(Backend backend) { g_forced.store(backend, std::memory_order_relaxed); }

}  // namespace reqnet::kernels
