#include "gridslp/validate.hpp"

#include <algorithm>

#include "gridslp/geometry.hpp"

namespace gridslp {

const char* to_string(ViolationKind k) noexcept {
    switch (k) {
        case ViolationKind::Cycle: return "cycle";
        case ViolationKind::UndefinedReference: return "undefined-reference";
        case ViolationKind::SortMismatch: return "sort-mismatch";
        case ViolationKind::DimensionMismatch: return "dimension-mismatch";
        case ViolationKind::HoleGeometry: return "hole-geometry";
        case ViolationKind::StartNotGround: return "start-not-ground";
        case ViolationKind::MissingStart: return "missing-start";
        case ViolationKind::Overflow: return "overflow";
        case ViolationKind::HoleMarkerInAlphabet: return "hole-marker-in-alphabet";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind k) const noexcept {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
}

namespace {

bool defined(const Grammar& g, SymbolId id) {
    return id != kNoSymbol && id < g.symbol_count() && g.rule(id).op != Op::Undefined;
}

/// Symbols lying on a directed cycle (Tarjan, iterative).
std::vector<bool> cyclic_symbols(const Grammar& g) {
    const std::size_t n = g.symbol_count();
    std::vector<std::uint32_t> index(n, 0), low(n, 0);
    std::vector<bool> on_stack(n, false), cyclic(n, false);
    std::vector<SymbolId> scc_stack;
    std::uint32_t counter = 0;
    auto child = [&](SymbolId v, int k) -> SymbolId {
        const Production& p = g.rule(v);
        SymbolId c = k == 0 ? p.a : p.b;
        return defined(g, c) ? c : kNoSymbol;
    };
    for (SymbolId root = 0; root < n; ++root) {
        if (index[root] != 0 || !defined(g, root)) continue;
        std::vector<std::pair<SymbolId, int>> frames{{root, 0}};
        index[root] = low[root] = ++counter;
        scc_stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, k] = frames.back();
            if (k < 2) {
                SymbolId w = child(v, k++);
                if (w == kNoSymbol) continue;
                if (index[w] == 0) {
                    index[w] = low[w] = ++counter;
                    scc_stack.push_back(w);
                    on_stack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                    if (w == v) cyclic[v] = true;
                }
                continue;
            }
            SymbolId done = v;
            frames.pop_back();
            if (!frames.empty()) {
                SymbolId parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::vector<SymbolId> comp;
                SymbolId w = kNoSymbol;
                do {
                    w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != done);
                if (comp.size() > 1) {
                    for (SymbolId s : comp) cyclic[s] = true;
                }
            }
        }
    }
    return cyclic;
}

}  // namespace

ValidationReport validate(const Grammar& g, const ValidateOptions& opts) {
    ValidationReport report;
    auto add = [&](ViolationKind k, SymbolId s, std::string msg) {
        report.violations.push_back({k, s, std::move(msg)});
    };
    const std::size_t n = g.symbol_count();

    if (g.start() == kNoSymbol || g.start() >= n) {
        add(ViolationKind::MissingStart, kNoSymbol, "no start symbol");
    } else if (!defined(g, g.start())) {
        add(ViolationKind::UndefinedReference, g.start(),
            "start symbol " + g.name(g.start()) + " is undefined");
    }

    for (SymbolId id = 0; id < n; ++id) {
        const Production& p = g.rule(id);
        if (p.op == Op::Undefined) continue;
        p.for_each_child([&](SymbolId c) {
            if (!defined(g, c)) {
                std::string child = c < n ? g.name(c) : "#" + std::to_string(c);
                add(ViolationKind::UndefinedReference, id,
                    g.name(id) + " references undefined symbol " + child);
            }
        });
        if (p.op == Op::Terminal && p.ch == opts.hole_marker) {
            add(ViolationKind::HoleMarkerInAlphabet, id,
                g.name(id) + " derives the hole marker character");
        }
    }

    std::vector<bool> cyclic = cyclic_symbols(g);
    for (SymbolId id = 0; id < n; ++id) {
        if (cyclic[id]) add(ViolationKind::Cycle, id, g.name(id) + " is on a reference cycle");
    }

    // Geometry over the acyclic, fully defined part, children first.
    std::vector<SymbolGeometry> geo(n);
    std::vector<std::uint8_t> state(n, 0);
    for (SymbolId root = 0; root < n; ++root) {
        if (state[root] != 0 || !defined(g, root) || cyclic[root]) continue;
        std::vector<std::pair<SymbolId, int>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, k] = stack.back();
            const Production& p = g.rule(v);
            if (k < 2) {
                SymbolId c = k++ == 0 ? p.a : p.b;
                if (defined(g, c) && !cyclic[c] && state[c] == 0) {
                    state[c] = 1;
                    stack.emplace_back(c, 0);
                }
                continue;
            }
            SymbolId id = v;
            stack.pop_back();
            state[id] = 2;
            bool children_ok = true;
            p.for_each_child([&](SymbolId c) {
                if (!defined(g, c) || !geo[c].known) children_ok = false;
            });
            if (!children_ok) continue;
            const SymbolGeometry* ga = p.a == kNoSymbol ? nullptr : &geo[p.a];
            const SymbolGeometry* gb = p.b == kNoSymbol ? nullptr : &geo[p.b];
            try {
                geo[id] = derive_geometry(p, ga, gb);
            } catch (const OverflowError& e) {
                add(ViolationKind::Overflow, id, g.name(id) + ": " + e.what());
                continue;
            } catch (const DimensionMismatch& e) {
                bool hole = p.op == Op::HoleConcat && (p.hole.rows == 0 || p.hole.cols == 0);
                add(hole ? ViolationKind::HoleGeometry : ViolationKind::DimensionMismatch, id,
                    g.name(id) + ": " + e.what());
                continue;
            } catch (const InvalidGrammar& e) {
                add(ViolationKind::SortMismatch, id, g.name(id) + ": " + e.what());
                continue;
            }
            const SymbolGeometry& s = geo[id];
            if (s.context) {
                bool inside = s.hole_origin.rows >= 1 && s.hole_origin.cols >= 1 &&
                              s.hole_origin.rows + s.hole_dims.rows - 1 <= s.dims.rows &&
                              s.hole_origin.cols + s.hole_dims.cols - 1 <= s.dims.cols;
                bool frame = s.dims.rows * s.dims.cols > s.hole_dims.rows * s.hole_dims.cols;
                if (!inside || !frame) {
                    add(ViolationKind::HoleGeometry, id,
                        g.name(id) + ": hole does not lie strictly inside its frame");
                }
            }
        }
    }

    if (g.start() < n && defined(g, g.start()) && g.rule(g.start()).is_context()) {
        add(ViolationKind::StartNotGround, g.start(),
            "start symbol " + g.name(g.start()) + " is a context");
    }
    return report;
}

void require_valid(const Grammar& g, const ValidateOptions& opts) {
    ValidationReport r = validate(g, opts);
    if (!r.ok()) throw InvalidGrammar(r.violations.front().message);
}

}  // namespace gridslp
