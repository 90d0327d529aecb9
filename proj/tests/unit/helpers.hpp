#pragma once

#include <map>
#include <string>
#include <vector>

#include "gridslp/grammar.hpp"
#include "gridslp/matrix.hpp"

namespace testutil {

using namespace gridslp;

/// Recursive expansion by pasting child matrices. Independent of the
/// geometry table: hole positions are found by scanning for the marker.
inline Matrix naive_expand(const Grammar& g, SymbolId s, std::map<SymbolId, Matrix>& memo) {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    const Production& p = g.rule(s);
    auto first_marker = [](const Matrix& m) {
        for (Dim x = 1; x <= m.rows(); ++x)
            for (Dim y = 1; y <= m.cols(); ++y)
                if (m.at(x, y) == U'#') return std::pair{x, y};
        return std::pair{Dim{0}, Dim{0}};
    };
    Matrix out;
    switch (p.op) {
        case Op::Terminal:
            out = Matrix(1, 1, p.ch);
            break;
        case Op::HConcat:
        case Op::VConcat:
        case Op::CtxConcat: {
            Matrix first = naive_expand(g, p.a, memo);
            Matrix second = naive_expand(g, p.b, memo);
            bool h = p.op == Op::HConcat || (p.op == Op::CtxConcat && p.axis == Axis::Horizontal);
            if (p.op == Op::CtxConcat && p.side == Side::Second) std::swap(first, second);
            out = h ? Matrix(first.rows(), first.cols() + second.cols())
                    : Matrix(first.rows() + second.rows(), first.cols());
            out.paste(first, 1, 1);
            if (h) out.paste(second, 1, first.cols() + 1);
            else out.paste(second, first.rows() + 1, 1);
            break;
        }
        case Op::HoleConcat: {
            Matrix gm = naive_expand(g, p.a, memo);
            bool h = p.axis == Axis::Horizontal;
            out = h ? Matrix(gm.rows(), gm.cols() + p.hole.cols, U'#')
                    : Matrix(gm.rows() + p.hole.rows, gm.cols(), U'#');
            Dim x = (!h && p.side == Side::First) ? p.hole.rows + 1 : 1;
            Dim y = (h && p.side == Side::First) ? p.hole.cols + 1 : 1;
            out.paste(gm, x, y);
            break;
        }
        case Op::Apply:
        case Op::Compose: {
            out = naive_expand(g, p.a, memo);
            Matrix inner = naive_expand(g, p.b, memo);
            auto [x, y] = first_marker(out);
            out.paste(inner, x, y);
            break;
        }
        case Op::Undefined:
            throw Error("undefined");
    }
    memo.emplace(s, out);
    return out;
}

inline Matrix naive_expand(const Grammar& g) {
    std::map<SymbolId, Matrix> memo;
    return naive_expand(g, g.start(), memo);
}

inline Matrix rows(std::initializer_list<const char*> r) {
    std::vector<std::string> v(r.begin(), r.end());
    return Matrix::from_rows(v);
}

inline std::string data_path(const std::string& name) {
    return std::string(GRIDSLP_TEST_DATA) + "/" + name;
}

}  // namespace testutil
