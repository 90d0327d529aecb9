#pragma once

#include <cstdint>
#include <string>

#include "gridslp/errors.hpp"

namespace gridslp {

/// Row/column counts and 1-based coordinates.
using Dim = std::uint64_t;

/// Largest dimension (and area) accepted anywhere in the library.
inline constexpr Dim kMaxDim = Dim{1} << 62;

inline Dim checked_add(Dim a, Dim b, const char* what = "dimension") {
    Dim r = 0;
    if (__builtin_add_overflow(a, b, &r) || r > kMaxDim) {
        throw OverflowError(std::string(what) + " exceeds 2^62");
    }
    return r;
}

inline Dim checked_mul(Dim a, Dim b, const char* what = "area") {
    Dim r = 0;
    if (__builtin_mul_overflow(a, b, &r) || r > kMaxDim) {
        throw OverflowError(std::string(what) + " exceeds 2^62");
    }
    return r;
}

/// Adds without throwing; clamps at kMaxDim. Used for weights and path counts.
inline Dim saturating_add(Dim a, Dim b) noexcept {
    Dim r = 0;
    if (__builtin_add_overflow(a, b, &r) || r > kMaxDim) return kMaxDim;
    return r;
}

inline Dim saturating_mul(Dim a, Dim b) noexcept {
    Dim r = 0;
    if (__builtin_mul_overflow(a, b, &r) || r > kMaxDim) return kMaxDim;
    return r;
}

/// floor(log2(x)) for x >= 1.
inline int floor_log2(Dim x) noexcept { return 63 - __builtin_clzll(x); }

/// ceil(log2(x)) for x >= 1.
inline int ceil_log2(Dim x) noexcept { return x <= 1 ? 0 : floor_log2(x - 1) + 1; }

struct Dims {
    Dim rows = 0;
    Dim cols = 0;

    friend bool operator==(const Dims&, const Dims&) = default;
};

}  // namespace gridslp
