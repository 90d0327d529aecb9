#pragma once

#include <cstdint>
#include <vector>

#include "gridslp/grammar.hpp"

namespace gridslp {

/// Cached shape of one symbol's expansion.
///
/// For contexts the hole is hole_dims located with its top-left cell at
/// hole_origin (1-based, relative to the symbol's own bounding box).
struct SymbolGeometry {
    Dims dims{};
    bool context = false;
    Dims hole_dims{};
    Dims hole_origin{};
    /// Height of the derivation tree; a terminal production has depth 1.
    std::uint32_t depth = 0;
    bool known = false;

    Dim area() const noexcept { return dims.rows * dims.cols; }
    /// Cells outside the hole.
    Dim frame_area() const noexcept {
        return area() - (context ? hole_dims.rows * hole_dims.cols : 0);
    }
    bool in_hole(Dim x, Dim y) const noexcept {
        return context && x >= hole_origin.rows && x < hole_origin.rows + hole_dims.rows &&
               y >= hole_origin.cols && y < hole_origin.cols + hole_dims.cols;
    }
};

/// Per-symbol geometry computed bottom-up over the symbols reachable from start.
class GeometryTable {
public:
    GeometryTable() = default;

    const SymbolGeometry& operator[](SymbolId id) const { return table_[id]; }
    std::size_t size() const noexcept { return table_.size(); }

    Dims dims(SymbolId id) const { return table_[id].dims; }
    std::uint32_t depth(SymbolId id) const { return table_[id].depth; }

    friend GeometryTable compute_geometry(const Grammar& g, const std::vector<SymbolId>& roots);

private:
    std::vector<SymbolGeometry> table_;
};

/// Geometry of every symbol reachable from roots.
/// Throws DimensionMismatch, OverflowError or InvalidGrammar.
GeometryTable compute_geometry(const Grammar& g, const std::vector<SymbolId>& roots);

/// Geometry of every symbol reachable from start.
GeometryTable compute_geometry(const Grammar& g);

/// Geometry of a single production from its children's geometry.
/// Throws DimensionMismatch / OverflowError / InvalidGrammar on violations.
SymbolGeometry derive_geometry(const Production& p, const SymbolGeometry* a,
                               const SymbolGeometry* b);

}  // namespace gridslp
