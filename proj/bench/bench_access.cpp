// Serial reference loop against the OpenMP batch kernel, per access path.

#include <benchmark/benchmark.h>

#include "gridslp/balance.hpp"
#include "gridslp/gadgets.hpp"
#include "gridslp/kernels.hpp"

namespace {

using namespace gridslp;

struct Fixture {
    Grammar plain;
    Grammar tslp;
    GeometryTable plain_geo, tslp_geo;
    FastIndex index;
    std::vector<Position> queries;

    explicit Fixture(Dim n)
        : plain(build_spiral(n, 1.0)),
          tslp(balance_to_tslp(plain).grammar),
          plain_geo(compute_geometry(plain)),
          tslp_geo(compute_geometry(tslp)),
          index(tslp, 3.0),
          queries(sample_positions({n, n}, 1 << 16, 7)) {}

    AccessTarget target(AccessPath p) const {
        return p == AccessPath::Plain ? AccessTarget{&plain, &plain_geo, nullptr}
                                      : AccessTarget{&tslp, &tslp_geo, &index};
    }
};

const Fixture& fixture() {
    static const Fixture f(Dim{1} << 14);
    return f;
}

void run(benchmark::State& state, AccessPath path, bool parallel) {
    const Fixture& f = fixture();
    const AccessTarget t = f.target(path);
    for (auto _ : state) {
        BatchResult r = parallel ? batch_access_parallel(t, path, f.queries)
                                 : batch_access_serial(t, path, f.queries);
        benchmark::DoNotOptimize(r.chars.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.queries.size()));
}

void BM_PlainSerial(benchmark::State& s) { run(s, AccessPath::Plain, false); }
void BM_PlainParallel(benchmark::State& s) { run(s, AccessPath::Plain, true); }
void BM_TslpSerial(benchmark::State& s) { run(s, AccessPath::Tslp, false); }
void BM_TslpParallel(benchmark::State& s) { run(s, AccessPath::Tslp, true); }
void BM_FastSerial(benchmark::State& s) { run(s, AccessPath::Fast, false); }
void BM_FastParallel(benchmark::State& s) { run(s, AccessPath::Fast, true); }

void BM_IndexBuild(benchmark::State& state) {
    const Fixture& f = fixture();
    for (auto _ : state) {
        FastIndex idx(f.tslp, 3.0);
        benchmark::DoNotOptimize(idx.cell_count());
    }
}

BENCHMARK(BM_PlainSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlainParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TslpSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TslpParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FastSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FastParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IndexBuild)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
