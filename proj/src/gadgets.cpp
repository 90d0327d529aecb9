#include "gridslp/gadgets.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

#include "gridslp/access.hpp"

namespace gridslp {
namespace {

SymbolId term(ShapeBuilder& b, char32_t c) {
    const char* name = c == U'0' ? "zero" : c == U'1' ? "one" : c == U'$' ? "dollar" : "";
    return b.intern(Production::terminal(c), name);
}

SymbolId cat(ShapeBuilder& b, Axis axis, SymbolId x, SymbolId y, std::string_view name = {}) {
    if (x == kNoSymbol) return y;
    if (y == kNoSymbol) return x;
    return b.intern(Production::concat(axis, x, y), name);
}

SymbolId hcat(ShapeBuilder& b, SymbolId x, SymbolId y, std::string_view name = {}) {
    return cat(b, Axis::Horizontal, x, y, name);
}

SymbolId vcat(ShapeBuilder& b, SymbolId x, SymbolId y, std::string_view name = {}) {
    return cat(b, Axis::Vertical, x, y, name);
}

SymbolId bin_into(ShapeBuilder& b, unsigned n) {
    const SymbolId t0 = term(b, U'0'), t1 = term(b, U'1'), td = term(b, U'$');
    if (n == 0) return hcat(b, td, td, "Bin");
    // s derives Bin' (Bin without its '$' margins); the columns have height 2^i.
    SymbolId col0 = t0, col1 = t1, dollars = td;
    SymbolId s = vcat(b, t0, t1, "S1");
    for (unsigned i = 1; i < n; ++i) {
        col0 = vcat(b, col0, col0);
        col1 = vcat(b, col1, col1);
        dollars = vcat(b, dollars, dollars);
        s = vcat(b, hcat(b, col0, s), hcat(b, col1, s), "S" + std::to_string(i + 1));
    }
    dollars = vcat(b, dollars, dollars);
    return hcat(b, hcat(b, dollars, s), dollars, "Bin");
}

SymbolId shiftbin_into(ShapeBuilder& b, unsigned n) {
    const SymbolId t0 = term(b, U'0');
    SymbolId a = bin_into(b, n);
    SymbolId zrow = t0;  // 1 x (n+2)
    for (unsigned k = 1; k < n + 2; ++k) zrow = hcat(b, t0, zrow);
    // a covers blocks 0..2^i-1; z is a zero block of height 2^i and a's width.
    SymbolId z = zrow;
    for (unsigned i = 1; i <= n; ++i) {
        a = hcat(b, vcat(b, a, z), vcat(b, z, a), "A" + std::to_string(i));
        if (i < n) {
            // Stacking first keeps these apart from the all-H bottom row.
            SymbolId pair = vcat(b, z, z);
            z = hcat(b, pair, pair);
        }
    }
    SymbolId bottom = zrow;
    for (unsigned i = 1; i <= n; ++i) bottom = hcat(b, bottom, bottom);
    return vcat(b, a, bottom, "ShiftBin");
}

/// Fixed ingredients of C_{.,M}.
struct CnmShape {
    unsigned m = 0;
    Dim shift = 0;       // M' = 2^m
    Dim block_cols = 0;  // width of ShiftBin_{M'}
    Dim pad_cols = 0;    // M - 2 * block_cols
    SymbolId block = kNoSymbol;
    SymbolId top = kNoSymbol;  // M' zero rows right of the left block
};

/// C_{N,M} = H(left, V(top, rest)). rest holds the right block below its
/// shift together with the zero padding, so both grow by one prepend.
struct CnmState {
    Dim rows = 0;
    SymbolId left = kNoSymbol;  // N rows: copies, then zero rows
    SymbolId rest = kNoSymbol;  // N - M' rows
};

CnmShape cnm_shape(ShapeBuilder& b, Dim cols) {
    CnmShape s;
    s.m = cnm_shift_log(cols);
    s.shift = Dim{1} << s.m;
    s.block_cols = s.shift * (s.m + 2);
    s.pad_cols = cols - 2 * s.block_cols;
    s.block = shiftbin_into(b, s.m);
    s.top = zero_block(b, s.shift, s.block_cols + s.pad_cols);
    return s;
}

CnmState cnm_initial(ShapeBuilder& b, const CnmShape& s, Dim rows) {
    if (rows < 2 * s.shift) {
        throw ParameterError("C_{N,M} needs N >= " + std::to_string(2 * s.shift));
    }
    const Dim h = 2 * s.shift;
    CnmState st;
    st.rows = rows;
    const Dim left_copies = rows / h;
    const Dim left_pad = rows - left_copies * h;
    st.left = repeat_symbol(b, s.block, left_copies, Axis::Vertical);
    if (left_pad > 0) st.left = vcat(b, st.left, zero_block(b, left_pad, s.block_cols));
    const Dim right_rows = rows - s.shift;
    const Dim right_copies = right_rows / h;
    const Dim right_pad = right_rows - right_copies * h;
    SymbolId right = kNoSymbol;
    if (right_copies > 0) right = repeat_symbol(b, s.block, right_copies, Axis::Vertical);
    if (right_pad > 0) right = vcat(b, right, zero_block(b, right_pad, s.block_cols));
    st.rest = s.pad_cols > 0 ? hcat(b, right, zero_block(b, right_rows, s.pad_cols)) : right;
    return st;
}

SymbolId cnm_assemble(ShapeBuilder& b, const CnmShape& s, const CnmState& st) {
    return hcat(b, st.left, vcat(b, s.top, st.rest), "C" + std::to_string(st.rows));
}

/// Both columns are periodic below their first copy, so C_{N+grow} is C_N
/// with a band of copies inserted under the top shift.
CnmState cnm_extend(ShapeBuilder& b, const CnmState& st, Dim grow, SymbolId left_band,
                    SymbolId rest_band) {
    CnmState next;
    next.rows = st.rows + grow;
    next.left = vcat(b, left_band, st.left);
    next.rest = vcat(b, rest_band, st.rest);
    return next;
}

std::vector<SymbolId> cnm_sequence_into(ShapeBuilder& b, Dim rows, Dim cols, Dim step,
                                        unsigned k) {
    const CnmShape s = cnm_shape(b, cols);
    if (step == 0 || step % s.shift != 0 || step > rows) {
        throw ParameterError("sequence step must be a positive multiple of " +
                             std::to_string(s.shift) + " not above N");
    }
    std::vector<SymbolId> roots(k + 1, kNoSymbol);
    SymbolId left_band = kNoSymbol, rest_band = kNoSymbol;
    if (k >= 2) {
        left_band = repeat_symbol(b, s.block, step / s.shift, Axis::Vertical);
        rest_band = s.pad_cols > 0 ? hcat(b, left_band, zero_block(b, 2 * step, s.pad_cols))
                                   : left_band;
    }
    for (unsigned parity = 0; parity <= 1 && parity <= k; ++parity) {
        CnmState st = cnm_initial(b, s, rows + parity * step);
        roots[parity] = cnm_assemble(b, s, st);
        for (unsigned i = parity + 2; i <= k; i += 2) {
            st = cnm_extend(b, st, 2 * step, left_band, rest_band);
            roots[i] = cnm_assemble(b, s, st);
        }
    }
    return roots;
}

/// Copies the symbols reachable from roots into dst, optionally rotated
/// clockwise, and returns the id map.
std::vector<SymbolId> import(ShapeBuilder& dst, const Grammar& src,
                             const std::vector<SymbolId>& roots, bool rotate,
                             const std::string& suffix) {
    std::vector<SymbolId> map(src.symbol_count(), kNoSymbol);
    for (SymbolId v : src.postorder_from(roots)) {
        Production p = src.rule(v);
        if (p.a != kNoSymbol) p.a = map[p.a];
        if (p.b != kNoSymbol) p.b = map[p.b];
        if (rotate && p.op == Op::HConcat) {
            p = Production::vconcat(p.a, p.b);
        } else if (rotate && p.op == Op::VConcat) {
            p = Production::hconcat(p.b, p.a);
        }
        map[v] = dst.intern(p, p.op == Op::Terminal ? src.name(v) : src.name(v) + suffix);
    }
    return map;
}

}  // namespace

SymbolId repeat_symbol(ShapeBuilder& b, SymbolId sym, Dim count, Axis axis) {
    if (count == 0) throw ParameterError("repeat count must be positive");
    SymbolId acc = kNoSymbol;
    SymbolId power = sym;
    for (;;) {
        if (count & 1) acc = cat(b, axis, power, acc);
        count >>= 1;
        if (count == 0) return acc;
        power = cat(b, axis, power, power);
    }
}

SymbolId zero_block(ShapeBuilder& b, Dim rows, Dim cols) {
    SymbolId row = repeat_symbol(b, term(b, U'0'), cols, Axis::Horizontal);
    return repeat_symbol(b, row, rows, Axis::Vertical);
}

Grammar build_bin(unsigned n) {
    if (n > 40) throw ParameterError("Bin width limited to 40 bits");
    ShapeBuilder b;
    return b.build(bin_into(b, n));
}

Grammar build_shiftbin(unsigned n) {
    if (n > 40) throw ParameterError("ShiftBin width limited to 40 bits");
    ShapeBuilder b;
    return b.build(shiftbin_into(b, n));
}

unsigned cnm_shift_log(Dim width) {
    if (width < 4) throw ParameterError("C_{N,M} needs M >= 4");
    unsigned m = 0;
    while (m < 60 && (Dim{1} << (m + 2)) * (m + 3) <= width) ++m;
    return m;
}

Grammar build_cnm(Dim rows, Dim cols) {
    ShapeBuilder b;
    const CnmShape s = cnm_shape(b, cols);
    return b.build(cnm_assemble(b, s, cnm_initial(b, s, rows)));
}

CnmSequence build_cnm_sequence(Dim rows, Dim cols, Dim step, unsigned k) {
    ShapeBuilder b;
    std::vector<SymbolId> roots = cnm_sequence_into(b, rows, cols, step, k);
    return {b.build(roots.back()), roots};
}

SpiralParams spiral_params(Dim n, double c) {
    if (n < 4 || (n & (n - 1)) != 0) throw ParameterError("spiral side must be a power of two >= 4");
    if (!(c > 0)) throw ParameterError("spiral depth constant must be positive");
    SpiralParams p;
    p.n = n;
    p.c = c;
    const double logn = static_cast<double>(floor_log2(n));
    p.delta_prime = static_cast<double>(n) / (8.0 * c * logn);
    if (2.0 > p.delta_prime / 2.0) throw ParameterError("spiral side too small for this c");
    unsigned m = 0;
    while (static_cast<double>((Dim{1} << (m + 1)) * (m + 3)) <= p.delta_prime / 2.0) ++m;
    p.shift = Dim{1} << m;
    p.delta = static_cast<Dim>(std::floor(p.delta_prime / static_cast<double>(p.shift))) * p.shift;
    p.lambda = static_cast<Dim>(std::ceil(2.0 * c * logn));
    if (static_cast<double>(p.delta) < p.delta_prime / 2.0 || p.delta < 4 ||
        cnm_shift_log(p.delta) != m) {
        throw ParameterError("inconsistent spiral gadget width");
    }
    const Dim used_rows = (2 * p.lambda - 1) * p.delta;
    const Dim used_cols = 2 * p.lambda * p.delta;
    if (used_cols >= n || n - used_rows < 2 * p.shift) {
        throw ParameterError("spiral center would be empty");
    }
    p.center_rows = n - used_rows;
    p.center_cols = n - used_cols;
    return p;
}

Grammar build_spiral(Dim n, double c) {
    const SpiralParams p = spiral_params(n, c);
    const Dim steps = 2 * p.lambda - 1;
    // seq.roots[i] derives C_{center_rows + i*delta, delta}.
    ShapeBuilder sb;
    std::vector<SymbolId> roots =
        cnm_sequence_into(sb, p.center_rows, p.delta, p.delta, static_cast<unsigned>(steps));
    const Grammar seq = sb.build(roots.back());

    ShapeBuilder b;
    const std::vector<SymbolId> plain = import(b, seq, roots, false, "");
    const std::vector<SymbolId> turned = import(b, seq, roots, true, "r");
    // G(N - j*delta) and its clockwise rotation.
    auto g = [&](Dim j) { return plain[roots[steps - j]]; };
    auto gt = [&](Dim j) { return turned[roots[steps - j]]; };

    SymbolId inner = zero_block(b, p.center_rows, p.center_cols);
    for (Dim i = p.lambda; i-- > 0;) {
        const std::string tag = "_" + std::to_string(i);
        SymbolId f3 = i + 1 == p.lambda ? inner : vcat(b, gt(2 * i + 2), inner, "F3" + tag);
        SymbolId f2 = hcat(b, g(2 * i + 1), f3, "F2" + tag);
        SymbolId f1 = vcat(b, f2, gt(2 * i + 1), "F1" + tag);
        inner = hcat(b, f1, g(2 * i), "F0" + tag);
    }
    return b.build(inner);
}

std::size_t distinct_blocks(std::u32string_view row, unsigned n) {
    std::unordered_set<std::u32string_view> seen;
    if (row.size() < n + 2) return 0;
    for (std::size_t i = 0; i + n + 1 < row.size(); ++i) {
        if (row[i] != U'$' || row[i + n + 1] != U'$') continue;
        std::u32string_view word = row.substr(i + 1, n);
        bool bits = true;
        for (char32_t ch : word) bits = bits && (ch == U'0' || ch == U'1');
        if (bits) seen.insert(word);
    }
    return seen.size();
}

Matrix reference_bin(unsigned n) {
    const Dim rows = Dim{1} << n;
    Matrix m(rows, n + 2, U'$');
    for (Dim i = 1; i <= rows; ++i) {
        for (unsigned bit = 0; bit < n; ++bit) {
            m.at(i, 2 + bit) = ((i - 1) >> (n - 1 - bit)) & 1 ? U'1' : U'0';
        }
    }
    return m;
}

Matrix reference_shiftbin(unsigned n) {
    const Dim big = Dim{1} << n;
    const Dim w = n + 2;
    if (saturating_mul(2 * big, big * w) > kDefaultMaxCells) {
        throw AreaLimitExceeded("reference ShiftBin too large");
    }
    const Matrix bin = reference_bin(n);
    Matrix m(2 * big, big * w, U'0');
    for (Dim j = 0; j < big; ++j) m.paste(bin, j + 1, j * w + 1);
    return m;
}

Matrix reference_cnm(Dim rows, Dim cols) {
    if (saturating_mul(rows, cols) > kDefaultMaxCells) {
        throw AreaLimitExceeded("reference C_{N,M} too large");
    }
    const unsigned m = cnm_shift_log(cols);
    const Dim shift = Dim{1} << m;
    if (rows < 2 * shift) throw ParameterError("C_{N,M} needs N >= 2M'");
    const Matrix block = reference_shiftbin(m);
    Matrix out(rows, cols, U'0');
    for (Dim t = 0; t < rows / (2 * shift); ++t) out.paste(block, 1 + 2 * shift * t, 1);
    for (Dim t = 0; t < (rows - shift) / (2 * shift); ++t) {
        out.paste(block, shift + 1 + 2 * shift * t, block.cols() + 1);
    }
    return out;
}

Grammar build_caterpillar(std::size_t g, Axis axis) {
    GrammarBuilder b;
    const SymbolId a = b.add(Production::terminal(U'a'), "a");
    SymbolId x = a;
    for (std::size_t i = 1; i <= g; ++i) {
        x = b.add(Production::concat(axis, x, a), "X" + std::to_string(i));
    }
    return b.build(x);
}

Grammar random_grammar(std::uint64_t seed, std::size_t g, Dim max_dim) {
    if (g == 0) throw ParameterError("random grammar needs at least one symbol");
    if (max_dim == 0) throw ParameterError("random grammar needs max_dim >= 1");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    const char32_t alphabet[] = {U'a', U'b', U'c', U'd'};
    ShapeBuilder b;
    std::vector<SymbolId> syms;
    auto add_terminal = [&] {
        syms.push_back(b.add(Production::terminal(alphabet[pick(4)])));
    };
    add_terminal();
    while (syms.size() < g) {
        bool made = false;
        for (int attempt = 0; attempt < 32 && !made && pick(5) != 0; ++attempt) {
            const SymbolId x = syms[pick(syms.size())];
            const Axis axis = pick(2) == 0 ? Axis::Horizontal : Axis::Vertical;
            const Dims dx = b.dims(x);
            const std::size_t offset = pick(syms.size());
            for (std::size_t k = 0; k < syms.size() && !made; ++k) {
                const SymbolId y = syms[(offset + k) % syms.size()];
                const Dims dy = b.dims(y);
                bool fits = axis == Axis::Horizontal
                                ? dy.rows == dx.rows && dx.cols + dy.cols <= max_dim
                                : dy.cols == dx.cols && dx.rows + dy.rows <= max_dim;
                if (!fits) continue;
                bool x_first = pick(2) == 0;
                syms.push_back(b.add(Production::concat(axis, x_first ? x : y, x_first ? y : x)));
                made = true;
            }
        }
        if (!made) add_terminal();
    }
    return b.build(syms.back());
}

}  // namespace gridslp
