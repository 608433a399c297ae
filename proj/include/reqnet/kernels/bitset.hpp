#pragma once

// Word-parallel bitset kernels behind the graph metrics.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant compiled in its own translation unit. The variant is picked at
// runtime from CPUID; REQNET_SIMD=scalar|avx2|auto in the environment
// overrides the choice. All variants return bit-identical results.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace reqnet::kernels {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

struct BitsetKernels {
    std::string_view name;
    /// popcount(a & b) over `words` words.
    std::uint64_t (*and_popcount)(const Word* a, const Word* b, std::size_t words);
    /// dst |= src
    void (*or_into)(Word* dst, const Word* src, std::size_t words);
    /// next &= ~seen; seen |= next; returns popcount(next).
    std::uint64_t (*mask_new)(Word* next, Word* seen, std::size_t words);
};

const BitsetKernels& scalar_kernels();
/// nullptr when not compiled in or the CPU lacks AVX2.
const BitsetKernels* avx2_kernels();
/// Every variant usable on this machine, scalar first.
std::vector<const BitsetKernels*> available_kernels();

enum class Backend { automatic, scalar, avx2 };

/// Kernel table used when callers do not pass one explicitly.
const BitsetKernels& active_kernels();
/// Test hook; `automatic` restores CPUID/environment selection.
void force_backend(Backend backend);

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Dense row-major bit matrix; each row is `stride()` words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), stride_(words_for(cols)), bits_(rows * stride_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t stride() const { return stride_; }
    Word* row(std::size_t r) { return bits_.data() + r * stride_; }
    const Word* row(std::size_t r) const { return bits_.data() + r * stride_; }

    void set(std::size_t r, std::size_t c) { row(r)[c / kWordBits] |= Word{1} << (c % kWordBits); }
    bool test(std::size_t r, std::size_t c) const {
        return (row(r)[c / kWordBits] >> (c % kWordBits)) & 1u;
    }
    void clear() { std::fill(bits_.begin(), bits_.end(), Word{0}); }

private:
    std::size_t rows_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> bits_;
};

}  // namespace reqnet::kernels
