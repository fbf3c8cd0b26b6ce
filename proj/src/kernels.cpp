#include "qherm/kernels.hpp"

#include <atomic>
#include <bit>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace qherm::kern {

ByteMap ByteMap::from_basis(const std::uint8_t (&img)[8]) {
    ByteMap m;
    m.full[0] = 0;
    for (unsigned x = 1; x < 256; ++x) {
        // x & (x-1) drops the lowest set bit, which is already filled in.
        m.full[x] = static_cast<std::uint8_t>(m.full[x & (x - 1)] ^ img[std::countr_zero(x)]);
    }
    for (unsigned i = 0; i < 16; ++i) {
        m.lo[i] = m.full[i];
        m.hi[i] = m.full[i << 4];
    }
    return m;
}

ByteMap ByteMap::from_table(const std::uint8_t* table) {
    std::uint8_t img[8];
    for (unsigned j = 0; j < 8; ++j) img[j] = table[1u << j];
    ByteMap m = from_basis(img);
    for (unsigned x = 0; x < 256; ++x) {
        if (m.full[x] != table[x]) throw std::invalid_argument("ByteMap::from_table: table is not GF(2)-linear");
    }
    return m;
}

namespace {

void map_bytes_scalar(const ByteMap& f, const std::uint8_t* src, std::uint8_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = f.full[src[i]];
}

void map_xor_bytes_scalar(const ByteMap& f, const std::uint8_t* src, std::uint8_t* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] ^= f.full[src[i]];
}

void xor_bytes_scalar(const std::uint8_t* src, std::uint8_t* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] ^= src[i];
}

std::size_t count_zero_bytes_scalar(const std::uint8_t* p, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (p[i] == 0);
    return c;
}

void fuse_shift_or_scalar(const std::uint8_t* a, const std::uint8_t* b, unsigned shift,
                          std::uint8_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<std::uint8_t>((a[i] << shift) | b[i]);
}

constexpr detail::Impl scalar_impl{map_bytes_scalar, map_xor_bytes_scalar, xor_bytes_scalar,
                                   count_zero_bytes_scalar, fuse_shift_or_scalar};

bool avx2_available() {
#if QHERM_WITH_AVX2
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const detail::Impl& impl_for(Backend b) {
#if QHERM_WITH_AVX2
    if (b == Backend::avx2) return detail::avx2_impl;
#endif
    (void)b;
    return scalar_impl;
}

std::atomic<Backend> g_backend{avx2_available() ? Backend::avx2 : Backend::scalar};

} // namespace

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

Backend detected_backend() { return avx2_available() ? Backend::avx2 : Backend::scalar; }

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available())
        throw std::runtime_error("avx2 backend not available on this build/CPU");
    g_backend.store(b, std::memory_order_relaxed);
}

void map_bytes(const ByteMap& f, const std::uint8_t* src, std::uint8_t* dst, std::size_t n) {
    impl_for(active_backend()).map(f, src, dst, n);
}

void map_xor_bytes(const ByteMap& f, const std::uint8_t* src, std::uint8_t* acc, std::size_t n) {
    impl_for(active_backend()).map_xor(f, src, acc, n);
}

void xor_bytes(const std::uint8_t* src, std::uint8_t* acc, std::size_t n) {
    impl_for(active_backend()).xorb(src, acc, n);
}

std::size_t count_zero_bytes(const std::uint8_t* p, std::size_t n) {
    return impl_for(active_backend()).count_zero(p, n);
}

void fuse_shift_or(const std::uint8_t* a, const std::uint8_t* b, unsigned shift,
                   std::uint8_t* dst, std::size_t n) {
    impl_for(active_backend()).fuse(a, b, shift, dst, n);
}

void histogram256(const std::uint8_t* p, std::size_t n, std::uint64_t out[256]) {
    // Four partial tables sidestep the per-entry store-to-load dependency.
    std::uint64_t h0[256] = {0}, h1[256] = {0}, h2[256] = {0}, h3[256] = {0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        ++h0[p[i]];
        ++h1[p[i + 1]];
        ++h2[p[i + 2]];
        ++h3[p[i + 3]];
    }
    for (; i < n; ++i) ++h0[p[i]];
    for (unsigned v = 0; v < 256; ++v) out[v] += h0[v] + h1[v] + h2[v] + h3[v];
}

} // namespace qherm::kern
