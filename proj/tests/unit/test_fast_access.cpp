#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gridslp/balance.hpp"
#include "gridslp/fast_access.hpp"
#include "gridslp/gadgets.hpp"
#include "gridslp/kernels.hpp"
#include "gridslp/predecessor.hpp"
#include "gridslp/serialize.hpp"
#include "helpers.hpp"

using namespace gridslp;

namespace {

std::optional<Dim> scan_predecessor(const std::vector<Dim>& keys, Dim x) {
    std::optional<Dim> best;
    for (Dim k : keys)
        if (k <= x && (!best || k > *best)) best = k;
    return best;
}

// Every fast answer must match the reference descent, within the visit bound.
void check_index(const Grammar& tslp, double eps, std::size_t queries, std::uint64_t seed) {
    GeometryTable geo = compute_geometry(tslp);
    FastIndex idx(tslp, eps);
    const unsigned k = idx.params().levels;
    const std::uint32_t bound = (geo.depth(tslp.start()) + k - 1) / k + 1;
    for (Position q : sample_positions(idx.dims(), queries, seed)) {
        AccessResult want = access_tslp(tslp, geo, q.x, q.y);
        AccessResult got = idx.access(q.x, q.y);
        REQUIRE(got.ch == want.ch);
        REQUIRE(got.visits <= bound);
    }
}

}  // namespace

TEST_CASE("predecessor") {
    PredecessorSet s({10, 3, 7, 7});
    CHECK(s.size() == 3);
    CHECK(s.predecessor(8) == Dim{7});
    CHECK(s.predecessor(10) == Dim{10});
    CHECK(s.predecessor(1000) == Dim{10});
    CHECK_FALSE(s.predecessor(2).has_value());
    CHECK_FALSE(PredecessorSet().predecessor(5).has_value());

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Dim> keys(rng() % 40);
        for (Dim& k : keys) k = rng() % 100;
        PredecessorSet set(keys);
        for (int q = 0; q < 20; ++q) {
            Dim x = rng() % 110;
            REQUIRE(set.predecessor(x) == scan_predecessor(keys, x));
        }
    }
}

TEST_CASE("index parameters") {
    FastParams p = fast_params(Dim{1} << 20, 3.0);
    CHECK(p.levels == 4);
    CHECK(p.region_bound == 16);
    CHECK(fast_params(1, 3.0).levels == 1);
    CHECK(fast_params(Dim{1} << 28, 0.1).levels == 1);
    CHECK_THROWS_AS(fast_params(16, 0.0), ParameterError);
    CHECK_THROWS_AS(fast_params(16, -1.0), ParameterError);
}

TEST_CASE("single terminal index") {
    GrammarBuilder b;
    Grammar g = b.build(b.add(Production::terminal(U'q')));
    FastIndex idx(g, 3.0);
    CHECK(idx.rule_count() == 1);
    CHECK(idx.cell_count() == 1);
    AccessResult r = idx.access(1, 1);
    CHECK(r.ch == U'q');
    CHECK(r.visits == 1);
    CHECK_THROWS_AS(idx.access(1, 2), OutOfBounds);
}

TEST_CASE("holed example through the index") {
    Grammar g = read_grammar_file(testutil::data_path("small_holed.tslp"));
    Grammar t = balance_to_tslp(g).grammar;
    FastIndex idx(t, 3.0);
    CHECK(idx.access(2, 2).ch == U'1');
    CHECK(idx.access(1, 1).ch == U'0');
    check_index(g, 1.0, 50, 1);
}

TEST_CASE("unwound regions tile their owner") {
    for (Dim n : {Dim{256}}) {
        Grammar t = balance_to_tslp(build_spiral(n, 1.0)).grammar;
        GeometryTable geo = compute_geometry(t);
        for (unsigned k : {1u, 3u}) {
            for (SymbolId s : t.reachable_postorder()) {
                std::vector<UnwoundRegion> regs = unwind(t, geo, s, k);
                REQUIRE(regions_tile(regs, geo.dims(s)));
                CHECK(regs.size() <= (std::size_t{1} << k) + 1);
                // Area bookkeeping: frames plus the owner's hole cover the box.
                Dim area = 0;
                for (const UnwoundRegion& r : regs)
                    area += r.dims.rows * r.dims.cols - r.hole_dims.rows * r.hole_dims.cols;
                CHECK(area == geo[s].area());
            }
        }
    }
    UnwoundRegion a;
    a.dims = {2, 2};
    CHECK_FALSE(regions_tile({a}, Dims{2, 3}));
    CHECK_FALSE(regions_tile({a, a}, Dims{2, 2}));
}

TEST_CASE("index agrees with descent") {
    check_index(balance_to_tslp(build_shiftbin(8)).grammar, 3.0, 1000, 2);
    check_index(balance_to_tslp(build_cnm(256, 64)).grammar, 2.0, 1000, 3);
    check_index(build_caterpillar(300), 3.0, 301, 4);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        check_index(balance_to_tslp(random_grammar(seed, 60, 20)).grammar, 3.0, 200, seed);
    }

    Grammar t = balance_to_tslp(build_spiral(1024, 1.0)).grammar;
    FastIndex idx(t, 3.0);
    const double per_symbol = double(t.reachable_postorder().size());
    const double b = double(idx.params().region_bound);
    CHECK(double(idx.cell_count()) <= per_symbol * (b + 2) * (b + 2));
    check_index(t, 3.0, 2000, 5);
}

TEST_CASE("batch kernels") {
    Grammar g = build_spiral(256, 1.0);
    Grammar t = balance_to_tslp(g).grammar;
    GeometryTable gg = compute_geometry(g), tg = compute_geometry(t);
    FastIndex idx(t, 3.0);
    std::vector<Position> qs = sample_positions(idx.dims(), 3000, 11);
    CHECK(qs.size() == 3000);
    CHECK(sample_positions(idx.dims(), 3000, 11).front().x == qs.front().x);

    BatchResult plain = batch_access_serial({&g, &gg, nullptr}, AccessPath::Plain, qs);
    for (AccessPath path : {AccessPath::Tslp, AccessPath::Fast}) {
        AccessTarget target{&t, &tg, &idx};
        BatchResult serial = batch_access_serial(target, path, qs);
        BatchResult par = batch_access_parallel(target, path, qs, 4);
        CHECK(serial.chars == plain.chars);
        CHECK(par.chars == serial.chars);
        CHECK(par.visits == serial.visits);
    }
    CHECK_THROWS_AS(batch_access_serial({}, AccessPath::Fast, qs), ParameterError);

    std::vector<Position> bad = qs;
    bad[17] = {0, 1};
    CHECK_THROWS_AS(batch_access_parallel({&t, &tg, &idx}, AccessPath::Fast, bad, 2), OutOfBounds);
}

TEST_CASE("bench report") {
    Grammar g = build_spiral(256, 1.0);
    Grammar t = balance_to_tslp(g).grammar;
    FastIndex idx(t, 3.0);
    BenchReport empty = bench_access(g, t, idx, 0, 1);
    REQUIRE(empty.paths.size() == 3);
    for (const PathReport& p : empty.paths) {
        CHECK(p.mean_visits == 0);
        CHECK(p.max_visits == 0);
    }
    BenchReport a = bench_access(g, t, idx, 500, 42);
    BenchReport b = bench_access(g, t, idx, 500, 42, 2);
    REQUIRE(a.paths.size() == 3);
    CHECK(a.paths[0].path == "plain");
    CHECK(a.paths[2].path == "fast");
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.paths[i].mean_visits == b.paths[i].mean_visits);
        CHECK(a.paths[i].max_visits == b.paths[i].max_visits);
    }
    CHECK(a.paths[2].mean_visits < a.paths[1].mean_visits);
}
