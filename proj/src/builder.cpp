#include "gridslp/builder.hpp"

namespace gridslp {

ShapeBuilder::ShapeBuilder(const Grammar& base)
    : builder_(base), geo_(base.symbol_count()) {
    std::vector<SymbolId> all(base.symbol_count());
    for (SymbolId i = 0; i < all.size(); ++i) all[i] = i;
    for (SymbolId id : base.postorder_from(all)) {
        const Production& p = base.rule(id);
        if (p.op == Op::Undefined) continue;
        try {
            geo_[id] = derive(p);
        } catch (const Error&) {
            geo_[id] = SymbolGeometry{};
        }
    }
}

SymbolGeometry ShapeBuilder::derive(const Production& p) const {
    auto at = [&](SymbolId id) -> const SymbolGeometry* {
        return id < geo_.size() ? &geo_[id] : nullptr;
    };
    return derive_geometry(p, at(p.a), at(p.b));
}

SymbolId ShapeBuilder::add(const Production& p, std::string_view name) {
    SymbolGeometry g = derive(p);
    SymbolId id = builder_.add(p, name);
    geo_.push_back(g);
    return id;
}

SymbolId ShapeBuilder::intern(const Production& p, std::string_view name) {
    SymbolGeometry g = derive(p);
    std::size_t before = builder_.symbol_count();
    SymbolId id = builder_.intern(p, name);
    if (builder_.symbol_count() != before) geo_.push_back(g);
    return id;
}

namespace {

SymbolId concat_range(ShapeBuilder& b, const std::vector<SymbolId>& parts, std::size_t lo,
                      std::size_t hi, Axis axis, bool dedupe) {
    if (hi - lo == 1) return parts[lo];
    std::size_t mid = lo + (hi - lo + 1) / 2;
    SymbolId left = concat_range(b, parts, lo, mid, axis, dedupe);
    SymbolId right = concat_range(b, parts, mid, hi, axis, dedupe);
    Production p = Production::concat(axis, left, right);
    return dedupe ? b.intern(p) : b.add(p);
}

}  // namespace

SymbolId concat_tree(ShapeBuilder& b, const std::vector<SymbolId>& parts, Axis axis,
                     bool dedupe) {
    if (parts.empty()) throw ParameterError("concatenation of zero parts");
    return concat_range(b, parts, 0, parts.size(), axis, dedupe);
}

}  // namespace gridslp
