#include "gridslp/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <random>

namespace gridslp {
namespace {

AccessResult run_one(const AccessTarget& t, AccessPath path, Position q) {
    switch (path) {
        case AccessPath::Plain: return access_plain(*t.grammar, *t.geometry, q.x, q.y);
        case AccessPath::Tslp: return access_tslp(*t.grammar, *t.geometry, q.x, q.y);
        case AccessPath::Fast: return t.index->access(q.x, q.y);
    }
    return {};
}

void check_target(const AccessTarget& t, AccessPath path) {
    const bool ok = path == AccessPath::Fast ? t.index != nullptr
                                             : t.grammar != nullptr && t.geometry != nullptr;
    if (!ok) throw ParameterError(std::string("no structure for the ") + to_string(path) + " path");
}

PathReport summarize(AccessPath path, const BatchResult& r, double seconds) {
    PathReport p;
    p.path = to_string(path);
    if (r.visits.empty()) return p;
    std::uint64_t total = 0;
    for (std::uint32_t v : r.visits) {
        total += v;
        p.max_visits = std::max(p.max_visits, v);
    }
    const double n = static_cast<double>(r.visits.size());
    p.mean_visits = static_cast<double>(total) / n;
    p.nanos_per_query = seconds * 1e9 / n;
    return p;
}

}  // namespace

std::vector<Position> sample_positions(Dims d, std::size_t count, std::uint64_t seed) {
    std::vector<Position> out;
    if (count == 0) return out;
    if (d.rows == 0 || d.cols == 0) throw ParameterError("cannot sample an empty string");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Dim> row(1, d.rows), col(1, d.cols);
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Dim x = row(rng);
        out.push_back({x, col(rng)});
    }
    return out;
}

const char* to_string(AccessPath p) noexcept {
    switch (p) {
        case AccessPath::Plain: return "plain";
        case AccessPath::Tslp: return "tslp";
        case AccessPath::Fast: return "fast";
    }
    return "plain";
}

BatchResult batch_access_serial(const AccessTarget& t, AccessPath path,
                                const std::vector<Position>& queries) {
    check_target(t, path);
    BatchResult r;
    r.chars.resize(queries.size());
    r.visits.resize(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        AccessResult a = run_one(t, path, queries[i]);
        r.chars[i] = a.ch;
        r.visits[i] = a.visits;
    }
    return r;
}

BatchResult batch_access_parallel(const AccessTarget& t, AccessPath path,
                                  const std::vector<Position>& queries, unsigned threads) {
    check_target(t, path);
    BatchResult r;
    r.chars.resize(queries.size());
    r.visits.resize(queries.size());
    const auto n = static_cast<std::int64_t>(queries.size());
    const int team = threads == 0 ? omp_get_max_threads() : static_cast<int>(threads);
    // Exceptions must not cross the parallel region; keep the first one.
    std::exception_ptr failure;
#pragma omp parallel for num_threads(team) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            AccessResult a = run_one(t, path, queries[static_cast<std::size_t>(i)]);
            r.chars[static_cast<std::size_t>(i)] = a.ch;
            r.visits[static_cast<std::size_t>(i)] = a.visits;
        } catch (...) {
#pragma omp critical(gridslp_batch_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return r;
}

BenchReport bench_access(const Grammar& input, const Grammar& tslp, const FastIndex& index,
                         std::size_t queries, std::uint64_t seed, unsigned threads) {
    BenchReport rep;
    rep.queries = queries;
    rep.seed = seed;
    rep.threads = std::max(1u, threads);
    const GeometryTable tslp_geo = compute_geometry(tslp);
    const std::vector<Position> pos = sample_positions(index.dims(), queries, seed);

    auto time_path = [&](const AccessTarget& t, AccessPath path) {
        const auto t0 = std::chrono::steady_clock::now();
        BatchResult r = rep.threads == 1 ? batch_access_serial(t, path, pos)
                                         : batch_access_parallel(t, path, pos, rep.threads);
        const auto t1 = std::chrono::steady_clock::now();
        rep.paths.push_back(summarize(path, r, std::chrono::duration<double>(t1 - t0).count()));
    };
    if (input.is_plain()) {
        const GeometryTable geo = compute_geometry(input);
        time_path({&input, &geo, nullptr}, AccessPath::Plain);
    }
    time_path({&tslp, &tslp_geo, nullptr}, AccessPath::Tslp);
    time_path({nullptr, nullptr, &index}, AccessPath::Fast);
    return rep;
}

}  // namespace gridslp
