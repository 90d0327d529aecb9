#include "gridslp/transforms.hpp"

#include <unordered_map>

#include "gridslp/balance.hpp"
#include "gridslp/builder.hpp"
#include "gridslp/validate.hpp"

namespace gridslp {
namespace {

void require_plain(const Grammar& g, const char* what) {
    if (!g.is_plain()) throw ParameterError(std::string(what) + " needs a hole-free grammar");
}

struct RowKey {
    SymbolId sym;
    Dim row;
    bool operator==(const RowKey&) const = default;
};

struct RowKeyHash {
    std::size_t operator()(const RowKey& k) const noexcept {
        return std::hash<std::uint64_t>{}(k.row * 0x9e3779b97f4a7c15ULL ^ k.sym);
    }
};

}  // namespace

ConcatResult concat_gadget(const Grammar& g, const std::vector<SymbolId>& parts, Axis axis) {
    ShapeBuilder b(g);
    for (SymbolId s : parts) {
        if (s >= b.symbol_count() || !b.geo(s).known) {
            throw InvalidGrammar("concatenation part is undefined");
        }
    }
    SymbolId root = concat_tree(b, parts, axis, false);
    return {b.build(g.start()), root};
}

Grammar rotate_cw(const Grammar& g) {
    require_plain(g, "rotation");
    std::vector<Production> rules = g.rules();
    for (Production& p : rules) {
        if (p.op == Op::HConcat) {
            p = Production::vconcat(p.a, p.b);
        } else if (p.op == Op::VConcat) {
            p = Production::hconcat(p.b, p.a);
        }
    }
    return Grammar(std::move(rules), g.names(), g.start());
}

const char* to_string(MarginSide s) noexcept {
    switch (s) {
        case MarginSide::Top: return "top";
        case MarginSide::Bottom: return "bottom";
        case MarginSide::Left: return "left";
        case MarginSide::Right: return "right";
    }
    return "top";
}

std::optional<MarginSide> parse_margin_side(std::string_view s) noexcept {
    for (MarginSide m : {MarginSide::Top, MarginSide::Bottom, MarginSide::Left, MarginSide::Right}) {
        if (s == to_string(m)) return m;
    }
    return std::nullopt;
}

Grammar margin_slp(const Grammar& g, MarginSide side) {
    require_plain(g, "margin extraction");
    compute_geometry(g);
    // Concatenations along the margin are kept; the ones across it collapse
    // to the child touching the margin.
    const Op along = side == MarginSide::Top || side == MarginSide::Bottom ? Op::HConcat
                                                                           : Op::VConcat;
    const bool keep_first = side == MarginSide::Top || side == MarginSide::Left;
    ShapeBuilder b;
    std::vector<SymbolId> out(g.symbol_count(), kNoSymbol);
    for (SymbolId v : g.reachable_postorder()) {
        const Production& p = g.rule(v);
        if (p.op == Op::Terminal) {
            out[v] = b.intern(p, g.name(v));
        } else if (p.op == along) {
            out[v] = b.intern(Production::hconcat(out[p.a], out[p.b]), g.name(v));
        } else {
            out[v] = keep_first ? out[p.a] : out[p.b];
        }
    }
    return compact(b.build(out[g.start()]));
}

SubstringDecomposition decompose_substring(const Grammar& g, const GeometryTable& geo, Dim i,
                                           Dim j) {
    const Dims d = geo.dims(g.start());
    if (d.rows != 1) throw NotOneDimensional("grammar derives more than one row");
    if (i < 1 || i > j || j > d.cols) {
        throw OutOfBounds("substring [" + std::to_string(i) + ".." + std::to_string(j) +
                          "] outside length " + std::to_string(d.cols));
    }
    SubstringDecomposition r;
    r.first = i;
    r.last = j;
    struct Task {
        SymbolId sym;
        Dim lo, hi;  // 1-based, inclusive, relative to sym
    };
    std::vector<Task> stack{{g.start(), i, j}};
    while (!stack.empty()) {
        Task t = stack.back();
        stack.pop_back();
        const Production& p = g.rule(t.sym);
        if (t.lo == 1 && t.hi == geo.dims(t.sym).cols) {
            r.symbols.push_back(t.sym);
            continue;
        }
        if (p.op != Op::HConcat) throw NotOneDimensional("unexpected production in 1D grammar");
        const Dim w = geo.dims(p.a).cols;
        if (t.hi <= w) {
            stack.push_back({p.a, t.lo, t.hi});
        } else if (t.lo > w) {
            stack.push_back({p.b, t.lo - w, t.hi - w});
        } else {
            stack.push_back({p.b, 1, t.hi - w});
            stack.push_back({p.a, t.lo, w});
        }
    }
    return r;
}

SubstringDecomposition decompose_substring(const Grammar& g, Dim i, Dim j) {
    require_plain(g, "substring decomposition");
    return decompose_substring(g, compute_geometry(g), i, j);
}

Grammar linearize_rows(const Grammar& g) {
    require_plain(g, "row linearization");
    const GeometryTable geo = compute_geometry(g);
    const Dims d = geo.dims(g.start());
    checked_mul(d.rows, d.cols, "linearized length");

    ShapeBuilder b;
    std::unordered_map<RowKey, SymbolId, RowKeyHash> memo;
    auto row_of = [&](SymbolId x, Dim i) -> SymbolId {
        std::vector<RowKey> stack{{x, i}};
        while (!stack.empty()) {
            RowKey k = stack.back();
            if (memo.count(k) != 0) {
                stack.pop_back();
                continue;
            }
            const Production& p = g.rule(k.sym);
            if (p.op == Op::Terminal) {
                memo.emplace(k, b.intern(p));
                stack.pop_back();
            } else if (p.op == Op::VConcat) {
                const Dim h = geo.dims(p.a).rows;
                RowKey child = k.row <= h ? RowKey{p.a, k.row} : RowKey{p.b, k.row - h};
                if (auto it = memo.find(child); it != memo.end()) {
                    memo.emplace(k, it->second);
                    stack.pop_back();
                } else {
                    stack.push_back(child);
                }
            } else {
                auto l = memo.find({p.a, k.row});
                auto r = memo.find({p.b, k.row});
                if (l != memo.end() && r != memo.end()) {
                    memo.emplace(k, b.intern(Production::hconcat(l->second, r->second)));
                    stack.pop_back();
                } else {
                    if (r == memo.end()) stack.push_back({p.b, k.row});
                    if (l == memo.end()) stack.push_back({p.a, k.row});
                }
            }
        }
        return memo.at({x, i});
    };

    std::vector<SymbolId> rows;
    rows.reserve(d.rows);
    for (Dim i = 1; i <= d.rows; ++i) rows.push_back(row_of(g.start(), i));
    return compact(b.build(concat_tree(b, rows, Axis::Horizontal, true)));
}

RebalanceResult rebalance_plain_2d(const Grammar& g) {
    require_plain(g, "rebalancing");
    require_valid(g);
    const GeometryTable geo = compute_geometry(g);
    const Dims d = geo.dims(g.start());
    if (d.rows > d.cols) {
        throw ParameterError("rebalancing needs rows <= cols; rotate the grammar first");
    }

    RebalanceResult r;
    r.stats.input_size = g.size();
    r.stats.input_depth = geo.depth(g.start());
    r.stats.dims = d;

    Grammar linear = linearize_rows(g);
    r.stats.linear_size = linear.size();
    BalanceResult balanced = balance_1d(linear);
    r.stats.balanced_size = balanced.stats.output_size;
    r.stats.balanced_depth = balanced.stats.output_depth;

    const Grammar& lin = balanced.grammar;
    const GeometryTable lin_geo = compute_geometry(lin);
    ShapeBuilder b(lin);
    std::vector<SymbolId> rows;
    rows.reserve(d.rows);
    for (Dim i = 1; i <= d.rows; ++i) {
        SubstringDecomposition parts =
            decompose_substring(lin, lin_geo, (i - 1) * d.cols + 1, i * d.cols);
        rows.push_back(concat_tree(b, parts.symbols, Axis::Horizontal, true));
    }
    SymbolId root = concat_tree(b, rows, Axis::Vertical, true);
    r.grammar = compact(b.build(root));
    r.stats.output_size = r.grammar.size();
    r.stats.output_depth = compute_geometry(r.grammar).depth(r.grammar.start());
    return r;
}

}  // namespace gridslp
