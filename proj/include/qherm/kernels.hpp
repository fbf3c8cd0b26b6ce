// Byte-wide bulk primitives used by the counting and array-generation loops.
// Scalar reference implementations always exist; an AVX2 variant is selected
// at runtime when the CPU supports it. Both backends must produce identical
// output for identical input (tested), so callers never branch on the backend.
#pragma once

#include <cstddef>
#include <cstdint>

namespace qherm::kern {

// A GF(2)-linear byte-to-byte map f (f(x^y) == f(x)^f(y), f(0) == 0) stored
// both as a full 256-entry table (scalar path) and as the two 16-entry nibble
// tables lo/hi with f(x) == lo[x & 15] ^ hi[x >> 4] (vector path).
struct ByteMap {
    alignas(32) std::uint8_t full[256];
    alignas(16) std::uint8_t lo[16];
    alignas(16) std::uint8_t hi[16];

    // img[j] = f(1 << j). The resulting map is linear by construction.
    static ByteMap from_basis(const std::uint8_t (&img)[8]);
    // Builds from an arbitrary table; throws std::invalid_argument if the
    // table is not GF(2)-linear (the nibble decomposition would be wrong).
    static ByteMap from_table(const std::uint8_t* table);

    std::uint8_t operator()(std::uint8_t x) const { return full[x]; }
};

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
// Backend chosen at startup: avx2 if compiled in and the CPU reports support.
Backend detected_backend();
Backend active_backend();
// Overrides the active backend (tests, --kernels flag). Throws
// std::runtime_error when asked for a backend this build/CPU cannot run.
void set_backend(Backend b);

// dst[i] = f(src[i])
void map_bytes(const ByteMap& f, const std::uint8_t* src, std::uint8_t* dst, std::size_t n);
// acc[i] ^= f(src[i])
void map_xor_bytes(const ByteMap& f, const std::uint8_t* src, std::uint8_t* acc, std::size_t n);
// acc[i] ^= src[i]
void xor_bytes(const std::uint8_t* src, std::uint8_t* acc, std::size_t n);
std::size_t count_zero_bytes(const std::uint8_t* p, std::size_t n);
// dst[i] = (a[i] << shift) | b[i]; requires b[i] < (1 << shift) and
// a[i] << shift to fit in a byte. Used to pair two symbol columns into one
// histogram key.
void fuse_shift_or(const std::uint8_t* a, const std::uint8_t* b, unsigned shift,
                   std::uint8_t* dst, std::size_t n);
// out[v] += number of occurrences of v in p[0..n). out is not cleared here.
void histogram256(const std::uint8_t* p, std::size_t n, std::uint64_t out[256]);

} // namespace qherm::kern
