#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gridslp/dims.hpp"

namespace gridslp {

/// Dense index into a grammar's symbol table.
using SymbolId = std::uint32_t;
inline constexpr SymbolId kNoSymbol = ~SymbolId{0};

enum class Axis : std::uint8_t { Horizontal, Vertical };

/// First is left (horizontal) or top (vertical); Second is right or bottom.
enum class Side : std::uint8_t { First, Second };

enum class Op : std::uint8_t {
    Undefined,   // referenced but never defined (only produced by the parser)
    Terminal,    // single character, 1x1
    HConcat,     // left | right
    VConcat,     // top over bottom
    Apply,       // ground = ctx(arg)
    HoleConcat,  // context = hole concatenated with a ground symbol
    CtxConcat,   // context = context concatenated with a ground symbol
    Compose,     // context = outer(inner(*))
};

/// Right-hand side of one production.
///
/// Operand meaning by op:
///   HConcat/VConcat: a = left/top, b = right/bottom
///   Apply:           a = context, b = argument
///   HoleConcat:      a = ground, hole dims in hole
///   CtxConcat:       a = context, b = ground
///   Compose:         a = outer context, b = inner context
struct Production {
    Op op = Op::Undefined;
    Axis axis = Axis::Horizontal;
    Side side = Side::First;
    char32_t ch = 0;
    SymbolId a = kNoSymbol;
    SymbolId b = kNoSymbol;
    Dims hole{};

    static Production terminal(char32_t c) {
        Production p;
        p.op = Op::Terminal;
        p.ch = c;
        return p;
    }
    static Production hconcat(SymbolId left, SymbolId right) {
        return binary(Op::HConcat, left, right);
    }
    static Production vconcat(SymbolId top, SymbolId bottom) {
        return binary(Op::VConcat, top, bottom);
    }
    static Production concat(Axis axis, SymbolId first, SymbolId second) {
        return axis == Axis::Horizontal ? hconcat(first, second) : vconcat(first, second);
    }
    static Production apply(SymbolId ctx, SymbolId arg) { return binary(Op::Apply, ctx, arg); }
    static Production compose(SymbolId outer, SymbolId inner) {
        return binary(Op::Compose, outer, inner);
    }
    static Production hole_concat(Axis axis, Side hole_side, SymbolId ground, Dims hole) {
        Production p;
        p.op = Op::HoleConcat;
        p.axis = axis;
        p.side = hole_side;
        p.a = ground;
        p.hole = hole;
        return p;
    }
    static Production ctx_concat(Axis axis, Side ctx_side, SymbolId ctx, SymbolId ground) {
        Production p = binary(Op::CtxConcat, ctx, ground);
        p.axis = axis;
        p.side = ctx_side;
        return p;
    }

    bool is_context() const noexcept {
        return op == Op::HoleConcat || op == Op::CtxConcat || op == Op::Compose;
    }
    bool is_plain() const noexcept {
        return op == Op::Terminal || op == Op::HConcat || op == Op::VConcat;
    }
    /// Number of right-hand-side symbols; a bare hole counts as one.
    std::size_t rhs_size() const noexcept {
        switch (op) {
            case Op::Undefined: return 0;
            case Op::Terminal: return 1;
            default: return 2;
        }
    }
    /// Child symbol ids in operand order (0, 1 or 2 of them).
    template <class F>
    void for_each_child(F&& f) const {
        if (a != kNoSymbol) f(a);
        if (b != kNoSymbol) f(b);
    }

    friend bool operator==(const Production&, const Production&) = default;

private:
    static Production binary(Op op, SymbolId a, SymbolId b) {
        Production p;
        p.op = op;
        p.a = a;
        p.b = b;
        return p;
    }
};

struct ProductionHash {
    std::size_t operator()(const Production& p) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(p.op) | (std::uint64_t(p.axis) << 8) |
                          (std::uint64_t(p.side) << 16) | (std::uint64_t(p.ch) << 24);
        auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        mix(p.a);
        mix(p.b);
        mix(p.hole.rows);
        mix(p.hole.cols);
        return static_cast<std::size_t>(h);
    }
};

/// A 2D straight-line program, with or without holes.
///
/// Symbols are dense ids; every symbol carries a name matching [A-Za-z0-9_]+.
/// Productions may appear in any order; acyclicity is checked by validate().
/// Instances are immutable once built.
class Grammar {
public:
    Grammar() = default;
    Grammar(std::vector<Production> rules, std::vector<std::string> names, SymbolId start);

    SymbolId start() const noexcept { return start_; }
    std::size_t symbol_count() const noexcept { return rules_.size(); }
    const Production& rule(SymbolId id) const { return rules_[id]; }
    const std::vector<Production>& rules() const noexcept { return rules_; }
    const std::string& name(SymbolId id) const { return names_[id]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<SymbolId> find(std::string_view name) const;

    /// Total number of right-hand-side symbols.
    std::size_t size() const noexcept;
    /// True iff no production uses holes.
    bool is_plain() const noexcept;
    bool is_context(SymbolId id) const { return rules_[id].is_context(); }

    /// Symbols reachable from start, in post-order (children before parents).
    std::vector<SymbolId> reachable_postorder() const;
    /// Symbols reachable from any of roots, in post-order.
    std::vector<SymbolId> postorder_from(const std::vector<SymbolId>& roots) const;

    friend bool operator==(const Grammar&, const Grammar&) = default;

private:
    std::vector<Production> rules_;
    std::vector<std::string> names_;
    SymbolId start_ = kNoSymbol;
};

/// True iff name is a nonempty string over [A-Za-z0-9_].
bool is_valid_name(std::string_view name) noexcept;

/// Incremental grammar construction with optional hash-consing.
class GrammarBuilder {
public:
    GrammarBuilder() = default;
    /// Seeds the builder with an existing grammar's symbols (ids preserved).
    explicit GrammarBuilder(const Grammar& base);

    /// Appends a new symbol. An empty name gets a generated one.
    SymbolId add(const Production& p, std::string_view name = {});
    /// Returns an existing symbol with an identical production, or adds one.
    SymbolId intern(const Production& p, std::string_view name = {});
    /// Reserves an id whose production is filled in later with define().
    SymbolId reserve(std::string_view name = {});
    void define(SymbolId id, const Production& p);

    const Production& rule(SymbolId id) const { return rules_[id]; }
    std::size_t symbol_count() const noexcept { return rules_.size(); }
    const std::string& name(SymbolId id) const { return names_[id]; }

    Grammar build(SymbolId start) const;

private:
    std::string unique_name(std::string_view wanted, SymbolId id);

    std::vector<Production> rules_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> by_name_;
    std::unordered_map<Production, SymbolId, ProductionHash> interned_;
};

/// Keeps only symbols reachable from start, merges identical productions
/// bottom-up and renumbers children-first. Names are kept.
Grammar compact(const Grammar& g);

}  // namespace gridslp
