// AVX2 variants of the byte kernels. This file is the only one compiled with
// -mavx2; callers reach it through the runtime-dispatched table in
// kernels.cpp, never directly.
#include "kernels_impl.hpp"

#if QHERM_WITH_AVX2

#include <immintrin.h>

namespace qherm::kern::detail {

namespace {

// f(x) = lo[x & 15] ^ hi[x >> 4] per byte, 32 bytes at a time via PSHUFB.
inline __m256i map32(__m256i x, __m256i lo_tbl, __m256i hi_tbl) {
    const __m256i nib = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_shuffle_epi8(lo_tbl, _mm256_and_si256(x, nib));
    __m256i hi = _mm256_shuffle_epi8(hi_tbl, _mm256_and_si256(_mm256_srli_epi16(x, 4), nib));
    return _mm256_xor_si256(lo, hi);
}

inline __m256i load_tbl(const std::uint8_t* t16) {
    __m128i t = _mm_load_si128(reinterpret_cast<const __m128i*>(t16));
    return _mm256_broadcastsi128_si256(t);
}

void map_bytes_avx2(const ByteMap& f, const std::uint8_t* src, std::uint8_t* dst, std::size_t n) {
    const __m256i lo_tbl = load_tbl(f.lo), hi_tbl = load_tbl(f.hi);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), map32(x, lo_tbl, hi_tbl));
    }
    for (; i < n; ++i) dst[i] = f.full[src[i]];
}

void map_xor_bytes_avx2(const ByteMap& f, const std::uint8_t* src, std::uint8_t* acc, std::size_t n) {
    const __m256i lo_tbl = load_tbl(f.lo), hi_tbl = load_tbl(f.hi);
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i),
                            _mm256_xor_si256(a, map32(x, lo_tbl, hi_tbl)));
    }
    for (; i < n; ++i) acc[i] ^= f.full[src[i]];
}

void xor_bytes_avx2(const std::uint8_t* src, std::uint8_t* acc, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_xor_si256(a, x));
    }
    for (; i < n; ++i) acc[i] ^= src[i];
}

std::size_t count_zero_bytes_avx2(const std::uint8_t* p, std::size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t c = 0, i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(x, zero)));
        c += static_cast<std::size_t>(__builtin_popcount(mask));
    }
    for (; i < n; ++i) c += (p[i] == 0);
    return c;
}

void fuse_shift_or_avx2(const std::uint8_t* a, const std::uint8_t* b, unsigned shift,
                        std::uint8_t* dst, std::size_t n) {
    // Byte shift emulated on 16-bit lanes; the mask clears cross-byte bleed.
    const __m256i keep = _mm256_set1_epi8(static_cast<char>((0xffu << shift) & 0xffu));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i sh = _mm256_and_si256(_mm256_slli_epi16(va, static_cast<int>(shift)), keep);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(sh, vb));
    }
    for (; i < n; ++i) dst[i] = static_cast<std::uint8_t>((a[i] << shift) | b[i]);
}

} // namespace

const Impl avx2_impl{map_bytes_avx2, map_xor_bytes_avx2, xor_bytes_avx2,
                     count_zero_bytes_avx2, fuse_shift_or_avx2};

} // namespace qherm::kern::detail

#endif // QHERM_WITH_AVX2
