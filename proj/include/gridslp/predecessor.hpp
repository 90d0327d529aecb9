#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gridslp/dims.hpp"

namespace gridslp {

/// Static predecessor structure over a sorted array of distinct keys.
///
/// The search is a branch-reduced binary search; the fast index calls
/// rank() directly on its flat coordinate arrays.
class PredecessorSet {
public:
    static constexpr std::size_t npos = ~std::size_t{0};

    PredecessorSet() = default;
    /// Keys may be unsorted and repeated.
    explicit PredecessorSet(std::vector<Dim> keys);

    /// Largest key <= x.
    std::optional<Dim> predecessor(Dim x) const;
    /// Position of the largest key <= x, or npos.
    std::size_t rank(Dim x) const noexcept { return rank(keys_.data(), keys_.size(), x); }

    std::size_t size() const noexcept { return keys_.size(); }
    const std::vector<Dim>& keys() const noexcept { return keys_; }

    /// keys[0..n) must be sorted ascending.
    static std::size_t rank(const Dim* keys, std::size_t n, Dim x) noexcept {
        if (n == 0 || x < keys[0]) return npos;
        const Dim* base = keys;
        while (n > 1) {
            std::size_t half = n / 2;
            base = base[half] <= x ? base + half : base;
            n -= half;
        }
        return static_cast<std::size_t>(base - keys);
    }

private:
    std::vector<Dim> keys_;
};

}  // namespace gridslp
