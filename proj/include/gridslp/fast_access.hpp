#pragma once

#include <cstdint>
#include <vector>

#include "gridslp/access.hpp"
#include "gridslp/geometry.hpp"
#include "gridslp/grammar.hpp"

namespace gridslp {

struct FastParams {
    double epsilon = 0;
    /// Derivation levels skipped per index step: max(1, floor(eps/3 * log2 log2(NM))).
    unsigned levels = 1;
    /// 2^levels; bounds the number of regions one symbol unwinds into.
    Dim region_bound = 2;
    Dim area = 0;
};

/// Throws ParameterError unless epsilon > 0.
FastParams fast_params(Dim area, double epsilon);

enum class CellKind : std::uint8_t { Terminal, Symbol, Hole };

/// One piece of a symbol unwound a fixed number of levels, in the owner's
/// 1-based coordinates. A framed region excludes its inner box.
struct UnwoundRegion {
    CellKind kind = CellKind::Terminal;
    SymbolId symbol = kNoSymbol;  // terminal or target symbol; none for Hole
    char32_t ch = 0;
    Dim top = 1, left = 1;
    Dims dims{};
    bool framed = false;
    Dim hole_top = 0, hole_left = 0;
    Dims hole_dims{};

    bool contains(Dim x, Dim y) const noexcept;
};

/// Unwinds owner `levels` derivation levels. Contexts contribute a Hole
/// region for their own hole. The regions tile the owner's bounding box.
std::vector<UnwoundRegion> unwind(const Grammar& g, const GeometryTable& geo, SymbolId owner,
                                  unsigned levels);

/// True when every cell of a rows x cols box lies in exactly one region.
/// Cost is quadratic in the number of distinct region boundaries.
bool regions_tile(const std::vector<UnwoundRegion>& regions, Dims box);

/// Random-access index over a TSLP: every indexed symbol stores a grid cut
/// along its region boundaries, and a query descends `levels` derivation
/// levels per lookup using two predecessor searches.
class FastIndex {
public:
    struct Cell {
        CellKind kind = CellKind::Terminal;
        char32_t ch = 0;
        std::uint32_t target = 0;  // rule index
        Dim row_off = 0, col_off = 0;
    };

    FastIndex() = default;
    FastIndex(const Grammar& g, double epsilon);

    /// Throws OutOfBounds; InternalHoleHit if the start symbol is a context
    /// and the point is in its hole.
    AccessResult access(Dim x, Dim y) const;

    const FastParams& params() const noexcept { return params_; }
    Dims dims() const noexcept { return dims_; }
    std::size_t rule_count() const noexcept { return rules_.size(); }
    std::size_t cell_count() const noexcept { return cells_.size(); }
    /// Bytes held by the grid arrays.
    std::size_t memory_bytes() const noexcept;

private:
    struct Rule {
        std::uint64_t cells = 0;
        std::uint32_t xs = 0, nx = 0;
        std::uint32_t ys = 0, ny = 0;
    };

    FastParams params_;
    Dims dims_{};
    std::vector<Rule> rules_;  // rule 0 is the start symbol
    std::vector<Dim> coords_;
    std::vector<Cell> cells_;
};

FastIndex build_fast(const Grammar& g, double epsilon);

inline AccessResult access_fast(const FastIndex& index, Dim x, Dim y) {
    return index.access(x, y);
}

}  // namespace gridslp
