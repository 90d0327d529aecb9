#include "gridslp/geometry.hpp"

#include <algorithm>
#include <string>

namespace gridslp {
namespace {

std::string show(Dims d) { return std::to_string(d.rows) + "x" + std::to_string(d.cols); }

const SymbolGeometry& need(const SymbolGeometry* g, bool context, const char* role) {
    if (g == nullptr || !g->known) throw InvalidGrammar(std::string(role) + " operand undefined");
    if (g->context != context) {
        throw InvalidGrammar(std::string(role) + " operand must be " +
                             (context ? "a context" : "ground"));
    }
    return *g;
}

std::uint32_t deeper(std::uint32_t a, std::uint32_t b) { return 1 + std::max(a, b); }

}  // namespace

SymbolGeometry derive_geometry(const Production& p, const SymbolGeometry* a,
                               const SymbolGeometry* b) {
    SymbolGeometry out;
    out.known = true;
    switch (p.op) {
        case Op::Undefined:
            throw InvalidGrammar("symbol is undefined");
        case Op::Terminal:
            out.dims = {1, 1};
            out.depth = 1;
            return out;
        case Op::HConcat: {
            const auto& l = need(a, false, "left");
            const auto& r = need(b, false, "right");
            if (l.dims.rows != r.dims.rows) {
                throw DimensionMismatch("horizontal concat of " + show(l.dims) + " and " +
                                        show(r.dims) + ": heights differ");
            }
            out.dims = {l.dims.rows, checked_add(l.dims.cols, r.dims.cols, "width")};
            out.depth = deeper(l.depth, r.depth);
            break;
        }
        case Op::VConcat: {
            const auto& t = need(a, false, "top");
            const auto& u = need(b, false, "bottom");
            if (t.dims.cols != u.dims.cols) {
                throw DimensionMismatch("vertical concat of " + show(t.dims) + " and " +
                                        show(u.dims) + ": widths differ");
            }
            out.dims = {checked_add(t.dims.rows, u.dims.rows, "height"), t.dims.cols};
            out.depth = deeper(t.depth, u.depth);
            break;
        }
        case Op::Apply: {
            const auto& c = need(a, true, "context");
            const auto& g = need(b, false, "argument");
            if (g.dims != c.hole_dims) {
                throw DimensionMismatch("argument " + show(g.dims) + " does not fit hole " +
                                        show(c.hole_dims));
            }
            out.dims = c.dims;
            out.depth = deeper(c.depth, g.depth);
            break;
        }
        case Op::HoleConcat: {
            const auto& g = need(a, false, "ground");
            if (p.hole.rows == 0 || p.hole.cols == 0) throw DimensionMismatch("empty hole");
            out.context = true;
            out.hole_dims = p.hole;
            if (p.axis == Axis::Horizontal) {
                if (p.hole.rows != g.dims.rows) {
                    throw DimensionMismatch("hole " + show(p.hole) + " beside ground " +
                                            show(g.dims) + ": heights differ");
                }
                out.dims = {g.dims.rows, checked_add(p.hole.cols, g.dims.cols, "width")};
                out.hole_origin = p.side == Side::First ? Dims{1, 1} : Dims{1, g.dims.cols + 1};
            } else {
                if (p.hole.cols != g.dims.cols) {
                    throw DimensionMismatch("hole " + show(p.hole) + " above/below ground " +
                                            show(g.dims) + ": widths differ");
                }
                out.dims = {checked_add(p.hole.rows, g.dims.rows, "height"), g.dims.cols};
                out.hole_origin = p.side == Side::First ? Dims{1, 1} : Dims{g.dims.rows + 1, 1};
            }
            out.depth = 1 + g.depth;
            break;
        }
        case Op::CtxConcat: {
            const auto& c = need(a, true, "context");
            const auto& g = need(b, false, "ground");
            out.context = true;
            out.hole_dims = c.hole_dims;
            out.hole_origin = c.hole_origin;
            if (p.axis == Axis::Horizontal) {
                if (c.dims.rows != g.dims.rows) {
                    throw DimensionMismatch("context " + show(c.dims) + " beside ground " +
                                            show(g.dims) + ": heights differ");
                }
                out.dims = {c.dims.rows, checked_add(c.dims.cols, g.dims.cols, "width")};
                if (p.side == Side::Second) out.hole_origin.cols += g.dims.cols;
            } else {
                if (c.dims.cols != g.dims.cols) {
                    throw DimensionMismatch("context " + show(c.dims) + " above/below ground " +
                                            show(g.dims) + ": widths differ");
                }
                out.dims = {checked_add(c.dims.rows, g.dims.rows, "height"), c.dims.cols};
                if (p.side == Side::Second) out.hole_origin.rows += g.dims.rows;
            }
            out.depth = deeper(c.depth, g.depth);
            break;
        }
        case Op::Compose: {
            const auto& outer = need(a, true, "outer");
            const auto& inner = need(b, true, "inner");
            if (inner.dims != outer.hole_dims) {
                throw DimensionMismatch("inner context " + show(inner.dims) +
                                        " does not fit hole " + show(outer.hole_dims));
            }
            out.context = true;
            out.dims = outer.dims;
            out.hole_dims = inner.hole_dims;
            out.hole_origin = {outer.hole_origin.rows + inner.hole_origin.rows - 1,
                               outer.hole_origin.cols + inner.hole_origin.cols - 1};
            out.depth = deeper(outer.depth, inner.depth);
            break;
        }
    }
    checked_mul(out.dims.rows, out.dims.cols, "area");
    return out;
}

GeometryTable compute_geometry(const Grammar& g) {
    if (g.start() == kNoSymbol) throw InvalidGrammar("grammar has no start symbol");
    return compute_geometry(g, {g.start()});
}

GeometryTable compute_geometry(const Grammar& g, const std::vector<SymbolId>& roots) {
    GeometryTable t;
    t.table_.assign(g.symbol_count(), SymbolGeometry{});
    auto lookup = [&](SymbolId id) -> const SymbolGeometry* {
        if (id == kNoSymbol || id >= t.table_.size()) return nullptr;
        return &t.table_[id];
    };
    for (SymbolId id : g.postorder_from(roots)) {
        const Production& p = g.rule(id);
        try {
            t.table_[id] = derive_geometry(p, lookup(p.a), lookup(p.b));
        } catch (const OverflowError& e) {
            throw OverflowError("symbol " + g.name(id) + ": " + e.what());
        } catch (const DimensionMismatch& e) {
            throw DimensionMismatch("symbol " + g.name(id) + ": " + e.what());
        } catch (const InvalidGrammar& e) {
            // An unknown child in post-order means a back edge, i.e. a cycle.
            throw InvalidGrammar("symbol " + g.name(id) + ": " + e.what());
        }
    }
    return t;
}

}  // namespace gridslp
