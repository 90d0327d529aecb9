#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridslp/access.hpp"
#include "gridslp/fast_access.hpp"
#include "gridslp/geometry.hpp"
#include "gridslp/grammar.hpp"

namespace gridslp {

struct Position {
    Dim x = 1, y = 1;
};

/// count uniform positions in [1..rows] x [1..cols], fixed by seed.
std::vector<Position> sample_positions(Dims d, std::size_t count, std::uint64_t seed);

enum class AccessPath { Plain, Tslp, Fast };
const char* to_string(AccessPath p) noexcept;

/// Read-only bundle of the structures a batch of queries runs against.
/// Plain and Tslp paths use grammar/geometry; Fast uses index.
struct AccessTarget {
    const Grammar* grammar = nullptr;
    const GeometryTable* geometry = nullptr;
    const FastIndex* index = nullptr;
};

struct BatchResult {
    std::vector<char32_t> chars;
    std::vector<std::uint32_t> visits;
};

/// Reference loop: one query after another.
BatchResult batch_access_serial(const AccessTarget& t, AccessPath path,
                                const std::vector<Position>& queries);

/// OpenMP version; threads == 0 keeps the runtime default. Results are in
/// query order and identical to the serial loop.
BatchResult batch_access_parallel(const AccessTarget& t, AccessPath path,
                                  const std::vector<Position>& queries, unsigned threads = 0);

struct PathReport {
    std::string path;
    double mean_visits = 0;
    std::uint32_t max_visits = 0;
    double nanos_per_query = 0;
};

struct BenchReport {
    std::size_t queries = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::vector<PathReport> paths;
};

/// Times each applicable path on the same sampled positions. input feeds the
/// plain path when it is hole-free; tslp feeds the tslp path and must be the
/// grammar index was built from. Visit counts do not depend on threads.
BenchReport bench_access(const Grammar& input, const Grammar& tslp, const FastIndex& index,
                         std::size_t queries, std::uint64_t seed, unsigned threads = 1);

}  // namespace gridslp
