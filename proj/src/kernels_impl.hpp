// Internal backend vtable shared by kernels.cpp and the ISA-specific
// translation units. Not installed; include only from src/.
#pragma once

#include "qherm/kernels.hpp"

namespace qherm::kern::detail {

struct Impl {
    void (*map)(const ByteMap&, const std::uint8_t*, std::uint8_t*, std::size_t);
    void (*map_xor)(const ByteMap&, const std::uint8_t*, std::uint8_t*, std::size_t);
    void (*xorb)(const std::uint8_t*, std::uint8_t*, std::size_t);
    std::size_t (*count_zero)(const std::uint8_t*, std::size_t);
    void (*fuse)(const std::uint8_t*, const std::uint8_t*, unsigned, std::uint8_t*, std::size_t);
};

#if QHERM_WITH_AVX2
extern const Impl avx2_impl;
#endif

} // namespace qherm::kern::detail
