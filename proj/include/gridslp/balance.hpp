#pragma once

#include <cstdint>

#include "gridslp/grammar.hpp"

namespace gridslp {

struct BalanceStats {
    std::size_t input_size = 0;
    std::size_t output_size = 0;
    std::uint32_t input_depth = 0;
    std::uint32_t output_depth = 0;
    /// N*M of the derived string (its length for 1D grammars).
    Dim string_area = 0;
    /// Implementation budget: output_depth <= depth_slope * log2(area) + depth_offset
    /// for hole-free input.
    double depth_slope = 0;
    double depth_offset = 0;
};

struct BalanceResult {
    Grammar grammar;
    BalanceStats stats;
};

/// Budget constants reported in BalanceStats.
inline constexpr double kBalanceDepthSlope = 4.0;
inline constexpr double kBalanceDepthOffset = 8.0;

/// Equivalent TSLP of size O(|g|) whose depth is logarithmic in the area.
///
/// Ground symbols are split into heavy paths (heavy child = larger area, ties
/// to the first operand). A path v1..vk becomes one Apply of a weight-balanced
/// Compose tree of step contexts onto vk. Context symbols of a holed input are
/// copied as they are, so their own depth is not reduced.
BalanceResult balance_to_tslp(const Grammar& g);

/// Replaces every context of a height-1 TSLP by its prefix and suffix around
/// the hole. Throws NotOneDimensional.
Grammar eliminate_contexts_1d(const Grammar& t);

/// balance_to_tslp followed by eliminate_contexts_1d.
BalanceResult balance_1d(const Grammar& g);

}  // namespace gridslp
