#include <doctest.h>

#include <random>

#include "gridslp/access.hpp"
#include "gridslp/gadgets.hpp"
#include "gridslp/serialize.hpp"
#include "gridslp/transforms.hpp"
#include "gridslp/validate.hpp"
#include "helpers.hpp"

using namespace gridslp;
using testutil::rows;

namespace {

std::size_t symbols(const Grammar& g) { return g.reachable_postorder().size(); }

// Exact linear fit through n = 1 and n = 2, checked on 3..6.
template <class Build>
void check_linear(Build build) {
    const long c1 = long(symbols(build(2))) - long(symbols(build(1)));
    const long c0 = long(symbols(build(1))) - c1;
    CHECK(long(symbols(build(3))) == c0 + 3 * c1);
    for (unsigned n = 4; n <= 6; ++n) CHECK(long(symbols(build(n))) == c0 + long(n) * c1);
}

}  // namespace

TEST_CASE("Bin") {
    CHECK(expand(build_bin(1)) == rows({"$0$", "$1$"}));
    Matrix b3 = expand(build_bin(3));
    CHECK(b3.dims() == Dims{8, 5});
    CHECK(b3.row(1) == U"$000$");
    CHECK(b3.row(8) == U"$111$");
    CHECK(expand(build_bin(0)) == rows({"$$"}));
    for (unsigned n = 1; n <= 8; ++n) CHECK(expand(build_bin(n)) == reference_bin(n));
    check_linear(build_bin);
    CHECK(symbols(build_bin(6)) == 37);
}

TEST_CASE("ShiftBin") {
    Matrix s1 = reference_shiftbin(1);
    CHECK(s1 == rows({"$0$000", "$1$$0$", "000$1$", "000000"}));
    Grammar g3 = build_shiftbin(3);
    GeometryTable geo = compute_geometry(g3);
    CHECK(geo.dims(g3.start()) == Dims{16, 40});
    Matrix m3 = expand(g3);
    Matrix bin = reference_bin(3);
    for (Dim x = 1; x <= 8; ++x)
        for (Dim y = 1; y <= 5; ++y) CHECK(m3.at(x, y) == bin.at(x, y));
    for (unsigned n = 1; n <= 6; ++n) CHECK(expand(build_shiftbin(n)) == reference_shiftbin(n));
    check_linear(build_shiftbin);
}

TEST_CASE("distinct block counts") {
    CHECK(distinct_blocks(U"$01$$01$$11$", 2) == 2);
    CHECK(distinct_blocks(U"0000", 2) == 0);
    for (unsigned n = 1; n <= 5; ++n) {
        Matrix m = reference_shiftbin(n);
        const Dim big = Dim{1} << (n + 1);
        for (Dim r = 1; r <= big; ++r) {
            CHECK(distinct_blocks(m.row(r), n) == std::min(r, big - r));
        }
    }
}

TEST_CASE("C_{N,M}") {
    CHECK(cnm_shift_log(64) == 2);
    CHECK(cnm_shift_log(4) == 0);
    CHECK_THROWS_AS(cnm_shift_log(3), ParameterError);
    CHECK_THROWS_AS(build_cnm(2, 16), ParameterError);

    // N = M = 64: M' = 4, 8 left copies, 7 right copies, 32 padding columns.
    Matrix ref = reference_cnm(64, 64);
    Matrix sb = reference_shiftbin(2);
    CHECK(sb.dims() == Dims{8, 16});
    for (Dim y = 33; y <= 64; ++y)
        for (Dim x = 1; x <= 64; ++x) CHECK(ref.at(x, y) == U'0');
    for (Dim x = 61; x <= 64; ++x) CHECK(ref.row(x).substr(16, 16) == std::u32string(16, U'0'));
    // The last left copy ends at row 64; its final row is all zero.
    CHECK(ref.at(63, 14) == U'1');
    CHECK(ref.row(64).substr(0, 16) == std::u32string(16, U'0'));

    for (Dim n : {16, 32, 64, 100}) {
        for (Dim m : {4, 13, 16, 64, 100}) {
            if (n < 2 * (Dim{1} << cnm_shift_log(m))) continue;
            CHECK(expand(build_cnm(n, m)) == reference_cnm(n, m));
        }
    }
    CHECK(symbols(build_cnm(Dim{1} << 16, 1024)) <= 2 * symbols(build_cnm(256, 1024)));
}

TEST_CASE("C_{N,M} sequences") {
    CnmSequence seq = build_cnm_sequence(64, 64, 8, 3);
    REQUIRE(seq.roots.size() == 4);
    GeometryTable geo = compute_geometry(seq.grammar, seq.roots);
    for (unsigned i = 0; i < 4; ++i) {
        CHECK(expand(seq.grammar, geo, seq.roots[i]) == reference_cnm(64 + 8 * i, 64));
    }
    CnmSequence zero = build_cnm_sequence(40, 20, 4, 0);
    CHECK(expand(zero.grammar) == expand(build_cnm(40, 20)));

    // Every added root costs the same fixed number of symbols.
    auto count = [](unsigned k) { return build_cnm_sequence(64, 64, 4, k).grammar.symbol_count(); };
    const std::size_t d8 = count(16) - count(8);
    CHECK(d8 == 8 * 4);
    CHECK(count(24) - count(16) == d8);

    CHECK_THROWS_AS(build_cnm_sequence(64, 64, 6, 2), ParameterError);
    CHECK_THROWS_AS(build_cnm_sequence(64, 64, 0, 2), ParameterError);
}

TEST_CASE("spiral parameters") {
    SpiralParams p = spiral_params(1024, 1.0);
    CHECK(p.lambda == 20);
    CHECK(p.shift == 2);
    CHECK(p.delta == 12);
    CHECK(p.center_rows == 1024 - 39 * 12);
    CHECK(p.center_cols == 1024 - 40 * 12);

    SpiralParams q = spiral_params(256, 1.0);
    CHECK(q.shift == 1);
    CHECK(q.delta == 4);
    CHECK(q.lambda == 16);
    for (Dim n : {Dim{256}, Dim{1024}, Dim{4096}, Dim{1} << 14, Dim{1} << 16}) {
        SpiralParams s = spiral_params(n, 1.0);
        CHECK(double(s.delta) >= s.delta_prime / 2);
        CHECK(double(s.delta) <= s.delta_prime);
        CHECK(s.delta % s.shift == 0);
    }
    CHECK_THROWS_AS(spiral_params(1000, 1.0), ParameterError);
    CHECK_THROWS_AS(spiral_params(64, 1.0), ParameterError);
    CHECK_THROWS_AS(spiral_params(256, 0.0), ParameterError);
}

TEST_CASE("spiral layers nest") {
    const Dim n = 1024;
    SpiralParams p = spiral_params(n, 1.0);
    Grammar g = build_spiral(n, 1.0);
    REQUIRE(validate(g).ok());
    GeometryTable geo = compute_geometry(g);
    Matrix s = expand(g);
    CHECK(s.dims() == Dims{n, n});

    for (Dim i = 0; i < p.lambda; ++i) {
        SymbolId f0 = *g.find("F0_" + std::to_string(i));
        const Dim side = n - 2 * i * p.delta;
        REQUIRE(geo.dims(f0) == Dims{side, side});
        if (i % 4 != 0 && i + 1 != p.lambda) continue;
        Matrix layer = expand(g, geo, f0);
        bool same = true;
        for (Dim x = 1; x <= side && same; ++x)
            for (Dim y = 1; y <= side && same; ++y)
                same = layer.at(x, y) == s.at(x + i * p.delta, y + i * p.delta);
        CHECK_MESSAGE(same, "layer " << i);
    }
    // The rightmost band of the outer layer is C_{N,delta} itself.
    Matrix c = reference_cnm(n, p.delta);
    bool band = true;
    for (Dim x = 1; x <= n && band; ++x)
        for (Dim y = 1; y <= p.delta && band; ++y) band = s.at(x, n - p.delta + y) == c.at(x, y);
    CHECK(band);
}

TEST_CASE("random grammars") {
    CHECK(random_grammar(5, 1, 8).symbol_count() == 1);
    CHECK(emit_grammar(random_grammar(9, 50, 16)) == emit_grammar(random_grammar(9, 50, 16)));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Grammar g = random_grammar(seed, 50, 16);
        CHECK(g.symbol_count() == 50);
        CHECK(validate(g).ok());
        Dims d = compute_geometry(g).dims(g.start());
        CHECK(d.rows <= 16);
        CHECK(d.cols <= 16);
    }
}

TEST_CASE("caterpillar") {
    Grammar v = build_caterpillar(4, Axis::Vertical);
    CHECK(expand(v) == rows({"a", "a", "a", "a", "a"}));
    CHECK(compute_geometry(v).depth(v.start()) == 5);
    CHECK(build_caterpillar(0).symbol_count() == 1);
}
