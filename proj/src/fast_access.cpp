#include "gridslp/fast_access.hpp"

#include <algorithm>
#include <cmath>

#include "gridslp/predecessor.hpp"
#include "gridslp/validate.hpp"

namespace gridslp {
namespace {

constexpr unsigned kMaxLevels = 20;
constexpr std::uint32_t kNoRule = ~std::uint32_t{0};

struct Grid {
    std::vector<Dim> xs, ys;
};

// Region boundaries inside the box; every region and every excluded inner
// box is a union of whole grid cells.
Grid cut(const std::vector<UnwoundRegion>& regions, Dims box) {
    Grid g;
    g.xs.push_back(1);
    g.ys.push_back(1);
    auto add = [&](std::vector<Dim>& v, Dim at, Dim limit) {
        if (at >= 1 && at <= limit) v.push_back(at);
    };
    for (const UnwoundRegion& r : regions) {
        add(g.xs, r.top, box.rows);
        add(g.xs, r.top + r.dims.rows, box.rows);
        add(g.ys, r.left, box.cols);
        add(g.ys, r.left + r.dims.cols, box.cols);
        if (r.framed) {
            add(g.xs, r.hole_top, box.rows);
            add(g.xs, r.hole_top + r.hole_dims.rows, box.rows);
            add(g.ys, r.hole_left, box.cols);
            add(g.ys, r.hole_left + r.hole_dims.cols, box.cols);
        }
    }
    for (auto* v : {&g.xs, &g.ys}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return g;
}

bool inside(const UnwoundRegion& r, Dims box) {
    return r.top >= 1 && r.left >= 1 && r.dims.rows >= 1 && r.dims.cols >= 1 &&
           r.top + r.dims.rows - 1 <= box.rows && r.left + r.dims.cols - 1 <= box.cols;
}

// Calls f(cell, region) for every grid cell covered by a region. Returns
// false when some region leaves the box.
template <class F>
bool paint(const std::vector<UnwoundRegion>& regions, const Grid& grid, Dims box, F&& f) {
    const std::size_t ny = grid.ys.size();
    for (std::size_t k = 0; k < regions.size(); ++k) {
        const UnwoundRegion& r = regions[k];
        if (!inside(r, box)) return false;
        const std::size_t i0 = PredecessorSet::rank(grid.xs.data(), grid.xs.size(), r.top);
        const std::size_t i1 =
            PredecessorSet::rank(grid.xs.data(), grid.xs.size(), r.top + r.dims.rows - 1);
        const std::size_t j0 = PredecessorSet::rank(grid.ys.data(), ny, r.left);
        const std::size_t j1 = PredecessorSet::rank(grid.ys.data(), ny, r.left + r.dims.cols - 1);
        for (std::size_t i = i0; i <= i1; ++i) {
            for (std::size_t j = j0; j <= j1; ++j) {
                if (r.framed && !r.contains(grid.xs[i], grid.ys[j])) continue;
                f(i * ny + j, k);
            }
        }
    }
    return true;
}

UnwoundRegion region_of(const Grammar& g, const GeometryTable& geo, SymbolId s, Dim top,
                        Dim left) {
    UnwoundRegion r;
    const Production& p = g.rule(s);
    const SymbolGeometry& sg = geo[s];
    if (p.op == Op::Terminal) {
        r.kind = CellKind::Terminal;
        r.ch = p.ch;
    } else {
        r.kind = CellKind::Symbol;
    }
    r.symbol = s;
    r.top = top;
    r.left = left;
    r.dims = sg.dims;
    if (sg.context) {
        r.framed = true;
        r.hole_top = top + sg.hole_origin.rows - 1;
        r.hole_left = left + sg.hole_origin.cols - 1;
        r.hole_dims = sg.hole_dims;
    }
    return r;
}

// Children of a symbol region with their top-left corners.
template <class F>
void children(const Grammar& g, const GeometryTable& geo, const UnwoundRegion& r, F&& f) {
    const Production& p = g.rule(r.symbol);
    const Dim t = r.top, l = r.left;
    switch (p.op) {
        case Op::HConcat:
            f(p.a, t, l);
            f(p.b, t, l + geo.dims(p.a).cols);
            break;
        case Op::VConcat:
            f(p.a, t, l);
            f(p.b, t + geo.dims(p.a).rows, l);
            break;
        case Op::Apply:
        case Op::Compose: {
            const SymbolGeometry& c = geo[p.a];
            f(p.a, t, l);
            f(p.b, t + c.hole_origin.rows - 1, l + c.hole_origin.cols - 1);
            break;
        }
        case Op::HoleConcat:
            if (p.side == Side::First) {
                p.axis == Axis::Horizontal ? f(p.a, t, l + p.hole.cols) : f(p.a, t + p.hole.rows, l);
            } else {
                f(p.a, t, l);
            }
            break;
        case Op::CtxConcat: {
            const SymbolId first = p.side == Side::First ? p.a : p.b;
            const SymbolId second = p.side == Side::First ? p.b : p.a;
            f(first, t, l);
            if (p.axis == Axis::Horizontal) {
                f(second, t, l + geo.dims(first).cols);
            } else {
                f(second, t + geo.dims(first).rows, l);
            }
            break;
        }
        case Op::Terminal:
        case Op::Undefined:
            throw InvalidGrammar("cannot unwind " + g.name(r.symbol));
    }
}

}  // namespace

FastParams fast_params(Dim area, double epsilon) {
    if (!(epsilon > 0) || !std::isfinite(epsilon)) {
        throw ParameterError("epsilon must be a positive number");
    }
    FastParams p;
    p.epsilon = epsilon;
    p.area = area;
    if (area >= 4) {
        double k = std::floor(epsilon / 3.0 * std::log2(std::log2(static_cast<double>(area))));
        p.levels = static_cast<unsigned>(std::clamp(k, 1.0, double(kMaxLevels)));
    }
    p.region_bound = Dim{1} << p.levels;
    return p;
}

bool UnwoundRegion::contains(Dim x, Dim y) const noexcept {
    if (x < top || y < left || x >= top + dims.rows || y >= left + dims.cols) return false;
    return !(framed && x >= hole_top && y >= hole_left && x < hole_top + hole_dims.rows &&
             y < hole_left + hole_dims.cols);
}

std::vector<UnwoundRegion> unwind(const Grammar& g, const GeometryTable& geo, SymbolId owner,
                                  unsigned levels) {
    std::vector<UnwoundRegion> cur{region_of(g, geo, owner, 1, 1)}, next;
    const SymbolGeometry& og = geo[owner];
    for (unsigned level = 0; level < levels; ++level) {
        next.clear();
        bool grew = false;
        for (const UnwoundRegion& r : cur) {
            if (r.kind != CellKind::Symbol) {
                next.push_back(r);
                continue;
            }
            grew = true;
            children(g, geo, r, [&](SymbolId c, Dim t, Dim l) {
                next.push_back(region_of(g, geo, c, t, l));
            });
        }
        cur.swap(next);
        if (!grew) break;
    }
    if (og.context) {
        UnwoundRegion hole;
        hole.kind = CellKind::Hole;
        hole.top = og.hole_origin.rows;
        hole.left = og.hole_origin.cols;
        hole.dims = og.hole_dims;
        cur.push_back(hole);
    }
    return cur;
}

bool regions_tile(const std::vector<UnwoundRegion>& regions, Dims box) {
    const Grid grid = cut(regions, box);
    std::vector<std::uint32_t> hits(grid.xs.size() * grid.ys.size(), 0);
    if (!paint(regions, grid, box, [&](std::size_t cell, std::size_t) { ++hits[cell]; })) {
        return false;
    }
    return std::all_of(hits.begin(), hits.end(), [](std::uint32_t h) { return h == 1; });
}

FastIndex::FastIndex(const Grammar& g, double epsilon) {
    require_valid(g);
    const GeometryTable geo = compute_geometry(g);
    dims_ = geo.dims(g.start());
    params_ = fast_params(geo[g.start()].area(), epsilon);

    // Discover the indexed symbols: the start and every target of a Symbol cell.
    std::vector<std::uint32_t> rule_of(g.symbol_count(), kNoRule);
    std::vector<SymbolId> owners{g.start()};
    std::vector<std::vector<UnwoundRegion>> regions;
    rule_of[g.start()] = 0;
    for (std::size_t k = 0; k < owners.size(); ++k) {
        regions.push_back(unwind(g, geo, owners[k], params_.levels));
        for (const UnwoundRegion& r : regions.back()) {
            if (r.kind == CellKind::Symbol && rule_of[r.symbol] == kNoRule) {
                rule_of[r.symbol] = static_cast<std::uint32_t>(owners.size());
                owners.push_back(r.symbol);
            }
        }
    }

    const std::size_t n = owners.size();
    std::vector<Grid> grids(n);
    std::vector<std::vector<Cell>> local(n);
    std::vector<char> bad(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const Dims box = geo.dims(owners[k]);
        grids[k] = cut(regions[k], box);
        std::vector<Cell>& cells = local[k];
        cells.resize(grids[k].xs.size() * grids[k].ys.size());
        std::vector<std::uint8_t> hits(cells.size(), 0);
        const bool ok = paint(regions[k], grids[k], box, [&](std::size_t cell, std::size_t i) {
            const UnwoundRegion& r = regions[k][i];
            Cell& c = cells[cell];
            c.kind = r.kind;
            c.ch = r.ch;
            if (r.kind == CellKind::Symbol) {
                c.target = rule_of[r.symbol];
                c.row_off = r.top - 1;
                c.col_off = r.left - 1;
            }
            ++hits[cell];
        });
        if (!ok || std::any_of(hits.begin(), hits.end(), [](std::uint8_t h) { return h != 1; })) {
            bad[k] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (bad[k]) throw Error("unwound regions of " + g.name(owners[k]) + " do not tile it");
    }

    rules_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rule& r = rules_[k];
        r.xs = static_cast<std::uint32_t>(coords_.size());
        r.nx = static_cast<std::uint32_t>(grids[k].xs.size());
        coords_.insert(coords_.end(), grids[k].xs.begin(), grids[k].xs.end());
        r.ys = static_cast<std::uint32_t>(coords_.size());
        r.ny = static_cast<std::uint32_t>(grids[k].ys.size());
        coords_.insert(coords_.end(), grids[k].ys.begin(), grids[k].ys.end());
        r.cells = cells_.size();
        cells_.insert(cells_.end(), local[k].begin(), local[k].end());
    }
}

AccessResult FastIndex::access(Dim x, Dim y) const {
    if (x < 1 || y < 1 || x > dims_.rows || y > dims_.cols) {
        throw OutOfBounds("position (" + std::to_string(x) + "," + std::to_string(y) +
                          ") outside " + std::to_string(dims_.rows) + "x" +
                          std::to_string(dims_.cols));
    }
    AccessResult res;
    std::uint32_t rule = 0;
    for (;;) {
        ++res.visits;
        const Rule& r = rules_[rule];
        const std::size_t i = PredecessorSet::rank(coords_.data() + r.xs, r.nx, x);
        const std::size_t j = PredecessorSet::rank(coords_.data() + r.ys, r.ny, y);
        const Cell& c = cells_[r.cells + i * r.ny + j];
        switch (c.kind) {
            case CellKind::Terminal:
                res.ch = c.ch;
                return res;
            case CellKind::Symbol:
                x -= c.row_off;
                y -= c.col_off;
                rule = c.target;
                break;
            case CellKind::Hole:
                throw InternalHoleHit("query landed in the hole of the start symbol");
        }
    }
}

std::size_t FastIndex::memory_bytes() const noexcept {
    return rules_.size() * sizeof(Rule) + coords_.size() * sizeof(Dim) +
           cells_.size() * sizeof(Cell);
}

FastIndex build_fast(const Grammar& g, double epsilon) { return FastIndex(g, epsilon); }

}  // namespace gridslp
