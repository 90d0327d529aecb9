#include "gridslp/grammar.hpp"

#include <utility>

namespace gridslp {

Grammar::Grammar(std::vector<Production> rules, std::vector<std::string> names, SymbolId start)
    : rules_(std::move(rules)), names_(std::move(names)), start_(start) {
    if (names_.size() != rules_.size()) throw InvalidGrammar("name table size mismatch");
    if (start_ != kNoSymbol && start_ >= rules_.size()) throw InvalidGrammar("start out of range");
}

std::optional<SymbolId> Grammar::find(std::string_view name) const {
    for (SymbolId i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t Grammar::size() const noexcept {
    std::size_t total = 0;
    for (const auto& r : rules_) total += r.rhs_size();
    return total;
}

bool Grammar::is_plain() const noexcept {
    for (const auto& r : rules_) {
        if (r.op != Op::Undefined && !r.is_plain()) return false;
    }
    return true;
}

std::vector<SymbolId> Grammar::reachable_postorder() const {
    if (start_ == kNoSymbol) return {};
    return postorder_from({start_});
}

std::vector<SymbolId> Grammar::postorder_from(const std::vector<SymbolId>& roots) const {
    std::vector<SymbolId> order;
    // 0 = unseen, 1 = on stack, 2 = done
    std::vector<std::uint8_t> state(rules_.size(), 0);
    std::vector<std::pair<SymbolId, int>> stack;
    for (SymbolId root : roots) {
        if (root >= rules_.size() || state[root] != 0) continue;
        stack.emplace_back(root, 0);
        state[root] = 1;
        while (!stack.empty()) {
            auto& [id, child] = stack.back();
            const Production& p = rules_[id];
            SymbolId next = kNoSymbol;
            while (child < 2 && next == kNoSymbol) {
                SymbolId c = child == 0 ? p.a : p.b;
                ++child;
                if (c != kNoSymbol && c < rules_.size() && state[c] == 0) next = c;
            }
            if (next != kNoSymbol) {
                state[next] = 1;
                stack.emplace_back(next, 0);
            } else {
                state[id] = 2;
                order.push_back(id);
                stack.pop_back();
            }
        }
    }
    return order;
}

bool is_valid_name(std::string_view name) noexcept {
    if (name.empty()) return false;
    for (char c : name) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_';
        if (!ok) return false;
    }
    return true;
}

GrammarBuilder::GrammarBuilder(const Grammar& base)
    : rules_(base.rules()), names_(base.names()) {
    for (SymbolId i = 0; i < names_.size(); ++i) {
        by_name_.emplace(names_[i], i);
        if (rules_[i].op != Op::Undefined) interned_.emplace(rules_[i], i);
    }
}

std::string GrammarBuilder::unique_name(std::string_view wanted, SymbolId id) {
    std::string base = wanted.empty() ? "n" + std::to_string(id) : std::string(wanted);
    if (!is_valid_name(base)) throw InvalidGrammar("invalid symbol name '" + base + "'");
    std::string name = base;
    for (int k = 1; by_name_.count(name) != 0; ++k) name = base + "_" + std::to_string(k);
    return name;
}

SymbolId GrammarBuilder::add(const Production& p, std::string_view name) {
    auto id = static_cast<SymbolId>(rules_.size());
    std::string n = unique_name(name, id);
    rules_.push_back(p);
    by_name_.emplace(n, id);
    names_.push_back(std::move(n));
    if (p.op != Op::Undefined) interned_.try_emplace(p, id);
    return id;
}

SymbolId GrammarBuilder::intern(const Production& p, std::string_view name) {
    if (auto it = interned_.find(p); it != interned_.end()) return it->second;
    return add(p, name);
}

SymbolId GrammarBuilder::reserve(std::string_view name) { return add(Production{}, name); }

void GrammarBuilder::define(SymbolId id, const Production& p) {
    rules_[id] = p;
    interned_.try_emplace(p, id);
}

Grammar GrammarBuilder::build(SymbolId start) const { return Grammar(rules_, names_, start); }

Grammar compact(const Grammar& g) {
    std::vector<SymbolId> order = g.reachable_postorder();
    std::vector<SymbolId> remap(g.symbol_count(), kNoSymbol);
    std::vector<Production> rules;
    std::vector<std::string> names;
    std::unordered_map<Production, SymbolId, ProductionHash> seen;
    for (SymbolId old : order) {
        Production p = g.rule(old);
        if (p.a != kNoSymbol) p.a = remap[p.a];
        if (p.b != kNoSymbol) p.b = remap[p.b];
        if (p.op != Op::Undefined) {
            if (auto it = seen.find(p); it != seen.end()) {
                remap[old] = it->second;
                continue;
            }
        }
        auto id = static_cast<SymbolId>(rules.size());
        remap[old] = id;
        seen.emplace(p, id);
        rules.push_back(p);
        names.push_back(g.name(old));
    }
    SymbolId start = g.start() == kNoSymbol ? kNoSymbol : remap[g.start()];
    return Grammar(std::move(rules), std::move(names), start);
}

}  // namespace gridslp
