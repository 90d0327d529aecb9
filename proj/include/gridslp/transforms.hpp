#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gridslp/geometry.hpp"
#include "gridslp/grammar.hpp"

namespace gridslp {

// A "1D grammar" below is a plain grammar whose start has height 1; it only
// uses terminals and horizontal concatenation.

struct ConcatResult {
    Grammar grammar;
    SymbolId root = kNoSymbol;
};

/// Extends g with a balanced binary tree over parts (k-1 new symbols, split
/// by index halving). Throws DimensionMismatch.
ConcatResult concat_gadget(const Grammar& g, const std::vector<SymbolId>& parts, Axis axis);

/// Clockwise rotation. Ids, names and symbol count are preserved.
/// Throws ParameterError on holed grammars.
Grammar rotate_cw(const Grammar& g);

enum class MarginSide { Top, Bottom, Left, Right };
const char* to_string(MarginSide s) noexcept;
std::optional<MarginSide> parse_margin_side(std::string_view s) noexcept;

/// 1D grammar for one margin of exp(g). Left and right margins are read top
/// to bottom. Output size never exceeds |g|.
Grammar margin_slp(const Grammar& g, MarginSide side);

struct SubstringDecomposition {
    /// Expansions concatenate to S[first..last].
    std::vector<SymbolId> symbols;
    Dim first = 0;
    Dim last = 0;
};

/// At most 2*depth+2 symbols of a 1D grammar covering S[i..j] (1-based,
/// inclusive). Throws OutOfBounds or NotOneDimensional.
SubstringDecomposition decompose_substring(const Grammar& g, const GeometryTable& geo, Dim i,
                                           Dim j);
SubstringDecomposition decompose_substring(const Grammar& g, Dim i, Dim j);

/// 1D grammar deriving the row-major concatenation T[1]T[2]...T[N].
/// Row symbols are created only for (symbol, row) pairs actually reached.
Grammar linearize_rows(const Grammar& g);

struct RebalanceStats {
    std::size_t input_size = 0;
    std::size_t output_size = 0;
    std::uint32_t input_depth = 0;
    std::uint32_t output_depth = 0;
    std::size_t linear_size = 0;
    std::size_t balanced_size = 0;
    std::uint32_t balanced_depth = 0;
    Dims dims{};
};

struct RebalanceResult {
    Grammar grammar;
    RebalanceStats stats;
};

/// Rows are linearized, balanced as a 1D grammar, cut back into rows and
/// stacked with balanced concatenation trees. Requires rows <= cols; throws
/// ParameterError otherwise (rotate first).
RebalanceResult rebalance_plain_2d(const Grammar& g);

}  // namespace gridslp
