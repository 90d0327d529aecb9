#include "gridslp/access.hpp"

#include <string>
#include <vector>

namespace gridslp {
namespace {

void check_bounds(Dims d, Dim x, Dim y) {
    if (x < 1 || y < 1 || x > d.rows || y > d.cols) {
        throw OutOfBounds("position (" + std::to_string(x) + "," + std::to_string(y) +
                          ") outside " + std::to_string(d.rows) + "x" + std::to_string(d.cols));
    }
}

}  // namespace

Matrix expand(const Grammar& g, const GeometryTable& geo, SymbolId s, Dim max_cells,
              char32_t hole_marker) {
    const SymbolGeometry& top = geo[s];
    if (!top.known) throw InvalidGrammar("symbol " + g.name(s) + " has no geometry");
    Dim cells = saturating_mul(top.dims.rows, top.dims.cols);
    if (cells > max_cells) {
        throw AreaLimitExceeded("expansion has " + std::to_string(cells) +
                                " cells, limit is " + std::to_string(max_cells));
    }
    Matrix m(top.dims.rows, top.dims.cols, hole_marker);

    struct Task {
        SymbolId sym;
        Dim row;  // 0-based offset of the symbol's top-left cell
        Dim col;
    };
    std::vector<Task> stack{{s, 0, 0}};
    while (!stack.empty()) {
        Task t = stack.back();
        stack.pop_back();
        const Production& p = g.rule(t.sym);
        switch (p.op) {
            case Op::Terminal:
                m.at(t.row + 1, t.col + 1) = p.ch;
                break;
            case Op::HConcat:
                stack.push_back({p.b, t.row, t.col + geo[p.a].dims.cols});
                stack.push_back({p.a, t.row, t.col});
                break;
            case Op::VConcat:
                stack.push_back({p.b, t.row + geo[p.a].dims.rows, t.col});
                stack.push_back({p.a, t.row, t.col});
                break;
            case Op::Apply:
            case Op::Compose: {
                const SymbolGeometry& c = geo[p.a];
                stack.push_back(
                    {p.b, t.row + c.hole_origin.rows - 1, t.col + c.hole_origin.cols - 1});
                stack.push_back({p.a, t.row, t.col});
                break;
            }
            case Op::HoleConcat: {
                bool first = p.side == Side::First;
                if (p.axis == Axis::Horizontal) {
                    stack.push_back({p.a, t.row, t.col + (first ? p.hole.cols : 0)});
                } else {
                    stack.push_back({p.a, t.row + (first ? p.hole.rows : 0), t.col});
                }
                break;
            }
            case Op::CtxConcat: {
                const Dims c = geo[p.a].dims;
                const Dims gd = geo[p.b].dims;
                bool first = p.side == Side::First;
                if (p.axis == Axis::Horizontal) {
                    stack.push_back({p.a, t.row, t.col + (first ? 0 : gd.cols)});
                    stack.push_back({p.b, t.row, t.col + (first ? c.cols : 0)});
                } else {
                    stack.push_back({p.a, t.row + (first ? 0 : gd.rows), t.col});
                    stack.push_back({p.b, t.row + (first ? c.rows : 0), t.col});
                }
                break;
            }
            case Op::Undefined:
                throw InvalidGrammar("symbol " + g.name(t.sym) + " is undefined");
        }
    }
    return m;
}

Matrix expand(const Grammar& g, Dim max_cells) {
    GeometryTable geo = compute_geometry(g);
    return expand(g, geo, g.start(), max_cells);
}

AccessResult access_plain(const Grammar& g, const GeometryTable& geo, Dim x, Dim y) {
    SymbolId s = g.start();
    check_bounds(geo.dims(s), x, y);
    AccessResult r;
    for (;;) {
        ++r.visits;
        const Production& p = g.rule(s);
        if (p.op == Op::Terminal) {
            r.ch = p.ch;
            return r;
        }
        if (p.op == Op::HConcat) {
            Dim w = geo[p.a].dims.cols;
            if (y <= w) {
                s = p.a;
            } else {
                y -= w;
                s = p.b;
            }
        } else if (p.op == Op::VConcat) {
            Dim h = geo[p.a].dims.rows;
            if (x <= h) {
                s = p.a;
            } else {
                x -= h;
                s = p.b;
            }
        } else {
            throw InvalidGrammar("access_plain met holed production " + g.name(s));
        }
    }
}

AccessResult access_symbol(const Grammar& g, const GeometryTable& geo, SymbolId s, Dim x,
                           Dim y) {
    check_bounds(geo.dims(s), x, y);
    AccessResult r;
    for (;;) {
        ++r.visits;
        const Production& p = g.rule(s);
        switch (p.op) {
            case Op::Terminal:
                r.ch = p.ch;
                return r;
            case Op::HConcat: {
                Dim w = geo[p.a].dims.cols;
                if (y <= w) {
                    s = p.a;
                } else {
                    y -= w;
                    s = p.b;
                }
                break;
            }
            case Op::VConcat: {
                Dim h = geo[p.a].dims.rows;
                if (x <= h) {
                    s = p.a;
                } else {
                    x -= h;
                    s = p.b;
                }
                break;
            }
            case Op::Apply:
            case Op::Compose: {
                const SymbolGeometry& c = geo[p.a];
                if (c.in_hole(x, y)) {
                    x -= c.hole_origin.rows - 1;
                    y -= c.hole_origin.cols - 1;
                    s = p.b;
                } else {
                    s = p.a;
                }
                break;
            }
            case Op::HoleConcat: {
                if (geo[s].in_hole(x, y)) {
                    throw InternalHoleHit("query landed in the hole of " + g.name(s));
                }
                if (p.side == Side::First) {
                    if (p.axis == Axis::Horizontal) {
                        y -= p.hole.cols;
                    } else {
                        x -= p.hole.rows;
                    }
                }
                s = p.a;
                break;
            }
            case Op::CtxConcat: {
                const Dims c = geo[p.a].dims;
                const Dims gd = geo[p.b].dims;
                bool horizontal = p.axis == Axis::Horizontal;
                Dim& coord = horizontal ? y : x;
                if (p.side == Side::First) {
                    Dim extent = horizontal ? c.cols : c.rows;
                    if (coord <= extent) {
                        s = p.a;
                    } else {
                        coord -= extent;
                        s = p.b;
                    }
                } else {
                    Dim extent = horizontal ? gd.cols : gd.rows;
                    if (coord <= extent) {
                        s = p.b;
                    } else {
                        coord -= extent;
                        s = p.a;
                    }
                }
                break;
            }
            case Op::Undefined:
                throw InvalidGrammar("symbol " + g.name(s) + " is undefined");
        }
    }
}

AccessResult access_tslp(const Grammar& g, const GeometryTable& geo, Dim x, Dim y) {
    return access_symbol(g, geo, g.start(), x, y);
}

}  // namespace gridslp
