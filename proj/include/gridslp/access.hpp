#pragma once

#include <cstdint>

#include "gridslp/geometry.hpp"
#include "gridslp/grammar.hpp"
#include "gridslp/matrix.hpp"

namespace gridslp {

/// Default cap on materialized cells (2^26).
inline constexpr Dim kDefaultMaxCells = Dim{1} << 26;

struct AccessResult {
    char32_t ch = 0;
    /// Productions visited on the way down, terminal production included.
    std::uint32_t visits = 0;
};

/// Materializes the expansion of s. Context symbols yield their frame with
/// every hole cell set to hole_marker. Throws AreaLimitExceeded.
Matrix expand(const Grammar& g, const GeometryTable& geo, SymbolId s,
              Dim max_cells = kDefaultMaxCells, char32_t hole_marker = U'#');

/// Convenience overload for the start symbol.
Matrix expand(const Grammar& g, Dim max_cells = kDefaultMaxCells);

/// Random access on a hole-free grammar. Throws OutOfBounds, or
/// InvalidGrammar when a holed production is met.
AccessResult access_plain(const Grammar& g, const GeometryTable& geo, Dim x, Dim y);

/// Random access on any grammar (holes allowed). Throws OutOfBounds, or
/// InternalHoleHit when the descent lands in an unfilled hole.
AccessResult access_tslp(const Grammar& g, const GeometryTable& geo, Dim x, Dim y);

/// Same descent started from an arbitrary ground symbol.
AccessResult access_symbol(const Grammar& g, const GeometryTable& geo, SymbolId s, Dim x,
                           Dim y);

}  // namespace gridslp
