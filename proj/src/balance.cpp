#include "gridslp/balance.hpp"

#include <algorithm>

#include "gridslp/builder.hpp"
#include "gridslp/geometry.hpp"
#include "gridslp/validate.hpp"

namespace gridslp {
namespace {

using u128 = unsigned __int128;

/// Binary tree over the step contexts of one path. Leaves are the steps in
/// order; an internal node composes its left (outer) and right (inner) parts.
class StepTree {
public:
    StepTree(GrammarBuilder& b, const std::vector<SymbolId>& steps,
             const std::vector<Dim>& weights)
        : b_(b) {
        std::vector<u128> code(steps.size());
        u128 prefix = 0;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            code[i] = 2 * prefix + weights[i];
            prefix += weights[i];
        }
        leaf_.resize(steps.size());
        build(steps, code, 0, steps.size(), 0, 2 * prefix, -1);
    }

    /// Composition of steps i..end.
    SymbolId suffix(std::size_t i) { return suf(leaf_[i]); }

private:
    struct Node {
        SymbolId comp = kNoSymbol;
        int parent = -1;
        int left = -1;
        int right = -1;
        SymbolId suf = kNoSymbol;
        SymbolId rest = kNoSymbol;
        bool rest_known = false;
    };

    int build(const std::vector<SymbolId>& steps, const std::vector<u128>& code, std::size_t lo,
              std::size_t hi, u128 low, u128 high, int parent) {
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back({});
        nodes_[id].parent = parent;
        if (hi - lo == 1) {
            nodes_[id].comp = steps[lo];
            leaf_[lo] = id;
            return id;
        }
        // Halve the code interval until it separates the items.
        std::size_t split = 0;
        u128 mid = 0;
        for (;;) {
            mid = low + (high - low) / 2;
            split = static_cast<std::size_t>(
                std::lower_bound(code.begin() + lo, code.begin() + hi, mid) - code.begin());
            if (split == lo) {
                low = mid;
            } else if (split == hi) {
                high = mid;
            } else {
                break;
            }
        }
        int l = build(steps, code, lo, split, low, mid, id);
        int r = build(steps, code, split, hi, mid, high, id);
        nodes_[id].left = l;
        nodes_[id].right = r;
        nodes_[id].comp = b_.intern(Production::compose(nodes_[l].comp, nodes_[r].comp));
        return id;
    }

    // Steps right of x's subtree, composed; kNoSymbol when none.
    SymbolId rest(int x) {
        Node& n = nodes_[x];
        if (n.rest_known) return n.rest;
        SymbolId r = kNoSymbol;
        if (n.parent >= 0) {
            const Node& p = nodes_[n.parent];
            r = p.left == x ? suf(p.right) : rest(n.parent);
        }
        nodes_[x].rest = r;
        nodes_[x].rest_known = true;
        return r;
    }

    // Steps from x's leftmost leaf to the end, composed.
    SymbolId suf(int x) {
        if (nodes_[x].suf != kNoSymbol) return nodes_[x].suf;
        SymbolId s;
        int parent = nodes_[x].parent;
        if (parent >= 0 && nodes_[parent].left == x) {
            s = suf(parent);
        } else {
            SymbolId r = rest(x);
            s = r == kNoSymbol ? nodes_[x].comp
                               : b_.intern(Production::compose(nodes_[x].comp, r));
        }
        nodes_[x].suf = s;
        return s;
    }

    GrammarBuilder& b_;
    std::vector<Node> nodes_;
    std::vector<int> leaf_;
};

Production remap(Production p, const std::vector<SymbolId>& out) {
    if (p.a != kNoSymbol) p.a = out[p.a];
    if (p.b != kNoSymbol) p.b = out[p.b];
    return p;
}

}  // namespace

BalanceResult balance_to_tslp(const Grammar& g) {
    require_valid(g);
    const GeometryTable geo = compute_geometry(g);
    const std::vector<SymbolId> order = g.reachable_postorder();
    const std::size_t n = g.symbol_count();
    const SymbolId start = g.start();

    // Number of root-to-symbol paths, saturating.
    std::vector<std::uint64_t> paths(n, 0);
    paths[start] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::uint64_t pv = paths[*it];
        g.rule(*it).for_each_child([&](SymbolId c) { paths[c] = saturating_add(paths[c], pv); });
    }

    // Path edges: heavy child, both logs unchanged, ground on both ends.
    std::vector<SymbolId> next(n, kNoSymbol), prev(n, kNoSymbol);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        SymbolId v = *it;
        const Production& p = g.rule(v);
        SymbolId heavy = kNoSymbol;
        if (p.op == Op::HConcat || p.op == Op::VConcat) {
            if (p.a == p.b) continue;
            heavy = geo[p.b].area() > geo[p.a].area() ? p.b : p.a;
        } else if (p.op == Op::Apply) {
            heavy = p.b;
        } else {
            continue;
        }
        if (prev[heavy] != kNoSymbol) continue;
        if (floor_log2(paths[v]) != floor_log2(paths[heavy])) continue;
        if (floor_log2(geo[v].area()) != floor_log2(geo[heavy].area())) continue;
        next[v] = heavy;
        prev[heavy] = v;
    }

    // Symbols that need their own output id: contexts, path ends, the start,
    // and anything referenced other than by its path predecessor.
    std::vector<bool> needs(n, false);
    needs[start] = true;
    for (SymbolId v : order) {
        if (g.rule(v).is_context() || prev[v] == kNoSymbol || next[v] == kNoSymbol) needs[v] = true;
        g.rule(v).for_each_child([&](SymbolId c) {
            if (prev[c] != v) needs[c] = true;
        });
    }

    GrammarBuilder b;
    std::vector<SymbolId> out(n, kNoSymbol);
    for (SymbolId v : order) {
        if (needs[v]) out[v] = b.reserve(g.name(v));
    }
    for (SymbolId v : order) {
        if (g.rule(v).is_context()) b.define(out[v], remap(g.rule(v), out));
    }

    std::vector<SymbolId> path, steps;
    std::vector<Dim> weights;
    for (SymbolId head : order) {
        if (g.rule(head).is_context() || prev[head] != kNoSymbol) continue;
        path.clear();
        for (SymbolId v = head; v != kNoSymbol; v = next[v]) path.push_back(v);
        const SymbolId tail = path.back();
        b.define(out[tail], remap(g.rule(tail), out));
        if (path.size() == 1) continue;

        steps.clear();
        weights.clear();
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const Production& p = g.rule(path[i]);
            const SymbolId on = path[i + 1];
            if (p.op == Op::Apply) {
                steps.push_back(out[p.a]);
                weights.push_back(geo[p.a].frame_area());
            } else {
                const bool first = p.a == on;
                const SymbolId off = first ? p.b : p.a;
                steps.push_back(b.intern(Production::hole_concat(
                    p.op == Op::HConcat ? Axis::Horizontal : Axis::Vertical,
                    first ? Side::First : Side::Second, out[off], geo.dims(on))));
                weights.push_back(geo[off].area());
            }
        }
        StepTree tree(b, steps, weights);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            if (!needs[path[i]]) continue;
            b.define(out[path[i]], Production::apply(tree.suffix(i), out[tail]));
        }
    }

    BalanceResult r;
    r.grammar = compact(b.build(out[start]));
    const GeometryTable out_geo = compute_geometry(r.grammar);
    r.stats.input_size = g.size();
    r.stats.output_size = r.grammar.size();
    r.stats.input_depth = geo.depth(start);
    r.stats.output_depth = out_geo.depth(r.grammar.start());
    r.stats.string_area = geo[start].area();
    r.stats.depth_slope = kBalanceDepthSlope;
    r.stats.depth_offset = kBalanceDepthOffset;
    return r;
}

Grammar eliminate_contexts_1d(const Grammar& t) {
    require_valid(t);
    const GeometryTable geo = compute_geometry(t);
    const std::vector<SymbolId> order = t.reachable_postorder();
    for (SymbolId v : order) {
        if (geo[v].dims.rows != 1) {
            throw NotOneDimensional("symbol " + t.name(v) + " has height " +
                                    std::to_string(geo[v].dims.rows));
        }
    }

    ShapeBuilder b;
    // Ground symbols map to one output symbol; contexts to (prefix, suffix).
    std::vector<SymbolId> ground(t.symbol_count(), kNoSymbol);
    std::vector<SymbolId> pre(t.symbol_count(), kNoSymbol), suf(t.symbol_count(), kNoSymbol);
    auto cat = [&](SymbolId x, SymbolId y) {
        if (x == kNoSymbol) return y;
        if (y == kNoSymbol) return x;
        return b.intern(Production::hconcat(x, y));
    };
    for (SymbolId v : order) {
        const Production& p = t.rule(v);
        switch (p.op) {
            case Op::Terminal:
                ground[v] = b.intern(p, t.name(v));
                break;
            case Op::HConcat:
                ground[v] = b.intern(Production::hconcat(ground[p.a], ground[p.b]), t.name(v));
                break;
            case Op::HoleConcat:
                (p.side == Side::First ? suf[v] : pre[v]) = ground[p.a];
                break;
            case Op::CtxConcat:
                pre[v] = pre[p.a];
                suf[v] = suf[p.a];
                if (p.side == Side::First) {
                    suf[v] = cat(suf[v], ground[p.b]);
                } else {
                    pre[v] = cat(ground[p.b], pre[v]);
                }
                break;
            case Op::Compose:
                pre[v] = cat(pre[p.a], pre[p.b]);
                suf[v] = cat(suf[p.b], suf[p.a]);
                break;
            case Op::Apply: {
                SymbolId l = pre[p.a], m = ground[p.b], r = suf[p.a];
                if (l == kNoSymbol || r == kNoSymbol) {
                    ground[v] = cat(cat(l, m), r);
                    break;
                }
                std::uint32_t dl = b.geo(l).depth, dm = b.geo(m).depth, dr = b.geo(r).depth;
                std::uint32_t left_first = std::max(1 + std::max(dl, dm), dr);
                std::uint32_t right_first = std::max(dl, 1 + std::max(dm, dr));
                ground[v] = left_first <= right_first ? cat(cat(l, m), r) : cat(l, cat(m, r));
                break;
            }
            case Op::VConcat:
            case Op::Undefined:
                throw NotOneDimensional("symbol " + t.name(v) + " is a vertical concatenation");
        }
    }
    return compact(b.build(ground[t.start()]));
}

BalanceResult balance_1d(const Grammar& g) {
    BalanceResult tslp = balance_to_tslp(g);
    BalanceResult r;
    r.grammar = eliminate_contexts_1d(tslp.grammar);
    r.stats = tslp.stats;
    r.stats.output_size = r.grammar.size();
    r.stats.output_depth = compute_geometry(r.grammar).depth(r.grammar.start());
    return r;
}

}  // namespace gridslp
