#include <bit>

#include "reqnet/kernels/bitset.hpp"

namespace reqnet::kernels {

namespace {

std::uint64_t and_popcount_scalar(const Word* a, const Word* b, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

void or_into_scalar(Word* dst, const Word* src, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

std::uint64_t mask_new_scalar(Word* next, Word* seen, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i) {
        const Word fresh = next[i] & ~seen[i];
        next[i] = fresh;
        seen[i] |= fresh;
        total += static_cast<std::uint64_t>(std::popcount(fresh));
    }
    return total;
}

}  // namespace

const BitsetKernels& scalar_kernels() {
    static const BitsetKernels k{"scalar", and_popcount_scalar, or_into_scalar, mask_new_scalar};
    return k;
}

}  // namespace reqnet::kernels
