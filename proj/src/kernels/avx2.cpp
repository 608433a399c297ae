// AVX2 kernel variants. Compile with: -mavx2 -mpopcnt
// Only reached through the dispatcher after a CPUID check.

#include <immintrin.h>

#include <bit>

#include "reqnet/kernels/bitset.hpp"

namespace reqnet::kernels::detail {

namespace {

// Nibble lookup popcount (Mula): per-byte counts via pshufb, then
// horizontal byte sums into 64-bit lanes with psadbw.
inline __m256i popcount_bytes(__m256i v) {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t horizontal_sum(__m256i acc) {
    return static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
}

std::uint64_t and_popcount_avx2(const Word* a, const Word* b, std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(_mm256_and_si256(va, vb)), zero));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < words; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

void or_into_avx2(Word* dst, const Word* src, std::size_t words) {
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        auto* d = reinterpret_cast<__m256i*>(dst + i);
        const __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(d, _mm256_or_si256(_mm256_loadu_si256(d), vs));
    }
    for (; i < words; ++i) dst[i] |= src[i];
}

std::uint64_t mask_new_avx2(Word* next, Word* seen, std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        auto* pn = reinterpret_cast<__m256i*>(next + i);
        auto* ps = reinterpret_cast<__m256i*>(seen + i);
        const __m256i s = _mm256_loadu_si256(ps);
        const __m256i fresh = _mm256_andnot_si256(s, _mm256_loadu_si256(pn));
        _mm256_storeu_si256(pn, fresh);
        _mm256_storeu_si256(ps, _mm256_or_si256(s, fresh));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(fresh), zero));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < words; ++i) {
        const Word fresh = next[i] & ~seen[i];
        next[i] = fresh;
        seen[i] |= fresh;
        total += static_cast<std::uint64_t>(std::popcount(fresh));
    }
    return total;
}

}  // namespace

const BitsetKernels& avx2_table() {
    static const BitsetKernels k{"avx2", and_popcount_avx2, or_into_avx2, mask_new_avx2};
    return k;
}

}  // namespace reqnet::kernels::detail
