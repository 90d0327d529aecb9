#pragma once

#include <string_view>
#include <vector>

#include "gridslp/geometry.hpp"
#include "gridslp/grammar.hpp"

namespace gridslp {

/// GrammarBuilder that derives each symbol's geometry as it is added.
/// Children must be defined before their parents.
class ShapeBuilder {
public:
    ShapeBuilder() = default;
    /// Seeds with every symbol of base; geometry is derived for defined,
    /// acyclic symbols.
    explicit ShapeBuilder(const Grammar& base);

    /// Throws DimensionMismatch / OverflowError / InvalidGrammar and leaves
    /// the builder unchanged.
    SymbolId add(const Production& p, std::string_view name = {});
    SymbolId intern(const Production& p, std::string_view name = {});

    const SymbolGeometry& geo(SymbolId id) const { return geo_[id]; }
    Dims dims(SymbolId id) const { return geo_[id].dims; }
    const Production& rule(SymbolId id) const { return builder_.rule(id); }
    std::size_t symbol_count() const noexcept { return builder_.symbol_count(); }

    Grammar build(SymbolId start) const { return builder_.build(start); }

private:
    SymbolGeometry derive(const Production& p) const;

    GrammarBuilder builder_;
    std::vector<SymbolGeometry> geo_;
};

/// Balanced binary tree over parts by index halving; returns the root.
/// With dedupe, identical internal nodes are shared.
SymbolId concat_tree(ShapeBuilder& b, const std::vector<SymbolId>& parts, Axis axis,
                     bool dedupe);

}  // namespace gridslp
