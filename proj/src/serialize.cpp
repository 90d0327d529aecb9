#include "gridslp/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "gridslp/matrix.hpp"

namespace gridslp {
namespace {

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

/// Splits on blanks. A token starting with '#' opens a comment, except where
/// a terminal's character operand is expected (third token of a T line).
std::vector<std::string_view> tokenize(std::string_view line, bool production) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        std::string_view tok = line.substr(i, j - i);
        bool char_operand = production && out.size() == 2 && out[1] == "T";
        if (tok.front() == '#' && !char_operand) break;
        out.push_back(tok);
        i = j;
    }
    return out;
}

Dim parse_dim(std::string_view s, std::size_t line) {
    Dim v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, "expected a nonnegative integer, got '" + std::string(s) + "'");
    }
    return v;
}

Side parse_side(std::string_view s, bool horizontal, std::size_t line) {
    if (horizontal) {
        if (s == "L") return Side::First;
        if (s == "R") return Side::Second;
        throw ParseError(line, "expected side L or R");
    }
    if (s == "T") return Side::First;
    if (s == "B") return Side::Second;
    throw ParseError(line, "expected side T or B");
}

const char* side_token(Axis axis, Side side) {
    if (axis == Axis::Horizontal) return side == Side::First ? "L" : "R";
    return side == Side::First ? "T" : "B";
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    for (std::size_t pos = 0; pos <= text.size();) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto toks = tokenize(text.substr(pos, end - pos), lines.size() >= 2);
        if (!toks.empty()) lines.push_back({number, std::move(toks)});
        pos = end + 1;
    }
    if (lines.empty()) throw ParseError(0, "empty input");

    const Line& header = lines[0];
    bool tslp = false;
    if (header.tokens.size() == 2 && header.tokens[1] == "v1" &&
        (header.tokens[0] == "SLP2D" || header.tokens[0] == "TSLP2D")) {
        tslp = header.tokens[0] == "TSLP2D";
    } else {
        throw ParseError(header.number, "expected header 'SLP2D v1' or 'TSLP2D v1'");
    }
    if (lines.size() < 2 || lines[1].tokens.size() != 2 || lines[1].tokens[0] != "start") {
        throw ParseError(lines.size() < 2 ? header.number : lines[1].number,
                         "expected 'start <ID>'");
    }

    // Ids in order of definition lines.
    std::unordered_map<std::string_view, SymbolId> ids;
    std::vector<std::string> names;
    for (std::size_t k = 2; k < lines.size(); ++k) {
        const Line& l = lines[k];
        if (l.tokens.size() < 2) throw ParseError(l.number, "incomplete production");
        std::string_view name = l.tokens[0];
        if (!is_valid_name(name)) {
            throw ParseError(l.number, "invalid symbol id '" + std::string(name) + "'");
        }
        if (!ids.emplace(name, static_cast<SymbolId>(names.size())).second) {
            throw ParseError(l.number, "symbol '" + std::string(name) + "' defined twice");
        }
        names.emplace_back(name);
    }
    const std::size_t defined = names.size();
    auto ref = [&](std::string_view name, std::size_t line) -> SymbolId {
        if (!is_valid_name(name)) {
            throw ParseError(line, "invalid symbol id '" + std::string(name) + "'");
        }
        auto [it, inserted] = ids.emplace(name, static_cast<SymbolId>(names.size()));
        if (inserted) names.emplace_back(name);
        return it->second;
    };

    std::vector<Production> rules(defined);
    for (std::size_t k = 2; k < lines.size(); ++k) {
        const Line& l = lines[k];
        const auto& t = l.tokens;
        std::string_view op = t[1];
        auto arity = [&](std::size_t n) {
            if (t.size() != n) {
                throw ParseError(l.number, "production '" + std::string(op) + "' expects " +
                                               std::to_string(n - 2) + " operands");
            }
        };
        auto need_tslp = [&] {
            if (!tslp) {
                throw ParseError(l.number,
                                 "production '" + std::string(op) + "' requires TSLP2D header");
            }
        };
        Production p;
        if (op == "T") {
            arity(3);
            std::u32string c = from_utf8(t[2]);
            if (c.size() != 1) throw ParseError(l.number, "terminal must be one character");
            p = Production::terminal(c[0]);
        } else if (op == "H" || op == "V") {
            arity(4);
            p = Production::concat(op == "H" ? Axis::Horizontal : Axis::Vertical,
                                   ref(t[2], l.number), ref(t[3], l.number));
        } else if (op == "A") {
            need_tslp();
            arity(4);
            p = Production::apply(ref(t[2], l.number), ref(t[3], l.number));
        } else if (op == "C") {
            need_tslp();
            arity(4);
            p = Production::compose(ref(t[2], l.number), ref(t[3], l.number));
        } else if (op == "HH" || op == "HV") {
            need_tslp();
            arity(6);
            bool h = op == "HH";
            p = Production::hole_concat(h ? Axis::Horizontal : Axis::Vertical,
                                        parse_side(t[2], h, l.number), ref(t[3], l.number),
                                        {parse_dim(t[4], l.number), parse_dim(t[5], l.number)});
        } else if (op == "CH" || op == "CV") {
            need_tslp();
            arity(5);
            bool h = op == "CH";
            p = Production::ctx_concat(h ? Axis::Horizontal : Axis::Vertical,
                                       parse_side(t[2], h, l.number), ref(t[3], l.number),
                                       ref(t[4], l.number));
        } else {
            throw ParseError(l.number, "unknown production kind '" + std::string(op) + "'");
        }
        rules[k - 2] = p;
    }
    SymbolId start = ref(lines[1].tokens[1], lines[1].number);
    rules.resize(names.size());
    return Grammar(std::move(rules), std::move(names), start);
}

std::string emit_grammar(const Grammar& g) {
    std::ostringstream out;
    out << (g.is_plain() ? "SLP2D v1\n" : "TSLP2D v1\n");
    out << "start " << g.name(g.start()) << '\n';
    for (SymbolId id = 0; id < g.symbol_count(); ++id) {
        const Production& p = g.rule(id);
        auto nm = [&](SymbolId s) -> const std::string& { return g.name(s); };
        switch (p.op) {
            case Op::Undefined:
                continue;
            case Op::Terminal:
                out << nm(id) << " T " << to_utf8(p.ch);
                break;
            case Op::HConcat:
                out << nm(id) << " H " << nm(p.a) << ' ' << nm(p.b);
                break;
            case Op::VConcat:
                out << nm(id) << " V " << nm(p.a) << ' ' << nm(p.b);
                break;
            case Op::Apply:
                out << nm(id) << " A " << nm(p.a) << ' ' << nm(p.b);
                break;
            case Op::Compose:
                out << nm(id) << " C " << nm(p.a) << ' ' << nm(p.b);
                break;
            case Op::HoleConcat:
                out << nm(id) << (p.axis == Axis::Horizontal ? " HH " : " HV ")
                    << side_token(p.axis, p.side) << ' ' << nm(p.a) << ' ' << p.hole.rows << ' '
                    << p.hole.cols;
                break;
            case Op::CtxConcat:
                out << nm(id) << (p.axis == Axis::Horizontal ? " CH " : " CV ")
                    << side_token(p.axis, p.side) << ' ' << nm(p.a) << ' ' << nm(p.b);
                break;
        }
        out << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Grammar read_grammar_file(const std::string& path) {
    return parse_grammar(read_text_file(path));
}

void write_grammar_file(const Grammar& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << emit_grammar(g);
}

}  // namespace gridslp
