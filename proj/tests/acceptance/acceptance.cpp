// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every tolerance used below is pinned in this block.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gridslp/access.hpp"
#include "gridslp/balance.hpp"
#include "gridslp/fast_access.hpp"
#include "gridslp/gadgets.hpp"
#include "gridslp/kernels.hpp"
#include "gridslp/predecessor.hpp"
#include "gridslp/serialize.hpp"
#include "gridslp/transforms.hpp"
#include "gridslp/validate.hpp"

using namespace gridslp;

namespace {

constexpr unsigned kMaxGadgetBits = 8;
constexpr std::size_t kSamples = 10000;
constexpr double kRebalanceDepthPerLog = 4.0;   // depth <= 4 log2(NM)
constexpr Dim kRebalanceSizePerInputRow = 8;    // size <= 8 |G| N
constexpr double kFlatnessRatio = 1.5;
constexpr double kOneDimDepthSlope = 3.0;       // depth <= 3 log2(g+1) + 10
constexpr double kOneDimDepthOffset = 10.0;
constexpr std::size_t kOneDimSizePerSymbol = 16;
constexpr double kFastEpsilon = 3.0;
constexpr double kFastVisitShare = 0.5;          // fast mean <= tslp mean / 2
constexpr double kSpiralCountRatio = 2.0;
constexpr double kCnmCountRatio = 2.0;
constexpr std::size_t kSequenceSlopeCap = 8;     // symbols per extra root
constexpr std::size_t kRandomGrammars = 100;
constexpr std::size_t kRandomSymbols = 50;
constexpr Dim kRandomMaxDim = 32;
constexpr std::size_t kPredecessorCases = 100000;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::size_t symbols(const Grammar& g) { return g.reachable_postorder().size(); }

double log2d(double v) { return std::log2(v); }

struct CorpusEntry {
    std::string name;
    Grammar grammar;
};

std::vector<CorpusEntry> corpus() {
    std::vector<CorpusEntry> c;
    c.push_back({"spiral 2^12", build_spiral(4096, 1.0)});
    c.push_back({"ShiftBin_8", build_shiftbin(8)});
    c.push_back({"C_{256,64}", build_cnm(256, 64)});
    c.push_back({"C_{1000,100}", build_cnm(1000, 100)});
    c.push_back({"C seq 64,64,+8 x3", build_cnm_sequence(64, 64, 8, 3).grammar});
    for (std::uint64_t seed = 0; seed < kRandomGrammars; ++seed) {
        c.push_back({"random " + std::to_string(seed),
                     random_grammar(seed, kRandomSymbols, kRandomMaxDim)});
    }
    return c;
}

// Number of cells where the two matrices differ (all of them on a shape mismatch).
std::size_t mismatches(const Matrix& a, const Matrix& b) {
    if (a.dims() != b.dims()) return std::max(a.cells().size(), b.cells().size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.cells().size(); ++i) n += a.cells()[i] != b.cells()[i];
    return n;
}

// Sampled agreement of two grammars deriving same-shaped strings.
std::size_t sampled_mismatches(const Grammar& a, const Grammar& b, std::size_t count,
                               std::uint64_t seed) {
    GeometryTable ga = compute_geometry(a), gb = compute_geometry(b);
    if (ga.dims(a.start()) != gb.dims(b.start())) return count;
    std::size_t bad = 0;
    for (Position p : sample_positions(ga.dims(a.start()), count, seed)) {
        bad += access_tslp(a, ga, p.x, p.y).ch != access_tslp(b, gb, p.x, p.y).ch;
    }
    return bad;
}

void criterion1(Outcome& o) {
    std::size_t bad = 0, cases = 0;
    for (unsigned n = 1; n <= kMaxGadgetBits; ++n) {
        bad += mismatches(expand(build_bin(n)), reference_bin(n));
        bad += mismatches(expand(build_shiftbin(n)), reference_shiftbin(n));
        cases += 2;
    }
    // Pairs with N < 2M' have no gadget; both sides must reject them.
    std::size_t rejected = 0, unrejected = 0;
    for (Dim n : {16, 32, 64, 128, 256}) {
        for (Dim m : {16, 32, 64, 128, 256}) {
            if (n < 2 * (Dim{1} << cnm_shift_log(m))) {
                int threw = 0;
                try { build_cnm(n, m); } catch (const ParameterError&) { ++threw; }
                try { reference_cnm(n, m); } catch (const ParameterError&) { ++threw; }
                unrejected += threw != 2;
                ++rejected;
                continue;
            }
            bad += mismatches(expand(build_cnm(n, m)), reference_cnm(n, m));
            ++cases;
        }
    }
    o.detail << cases << " gadget expansions, mismatched cells " << bad << "; " << rejected
             << " (N,M) pairs with N < 2M' rejected by both builder and reference";
    o.require(bad == 0, "mismatched cells");
    o.require(unrejected == 0, "rejection of N < 2M'");
}

void criterion2(Outcome& o) {
    std::size_t rows = 0, wrong = 0;
    for (unsigned n = 0; n <= kMaxGadgetBits; ++n) {
        Matrix m = reference_shiftbin(n);
        const Dim big = Dim{1} << (n + 1);
        for (Dim r = 1; r <= big; ++r, ++rows) {
            wrong += distinct_blocks(m.row(r), n) != std::min(r, big - r);
        }
    }
    o.detail << rows << " rows checked, " << wrong << " counts off min(r, 2N-r)";
    o.require(wrong == 0, "distinct block counts");
}

void criterion3(Outcome& o) {
    for (Dim n : {Dim{256}, Dim{1024}}) {
        Grammar g = build_spiral(n, 1.0);
        RebalanceResult r = rebalance_plain_2d(g);
        const std::size_t bad = n == 256 ? mismatches(expand(g), expand(r.grammar))
                                         : sampled_mismatches(g, r.grammar, kSamples, n);
        const double depth_cap = kRebalanceDepthPerLog * log2d(double(n) * double(n));
        const std::size_t size_cap = kRebalanceSizePerInputRow * r.stats.input_size * n;
        o.detail << "N=" << n << ": depth " << r.stats.output_depth << "/" << depth_cap
                 << ", size " << r.stats.output_size << "/" << size_cap << ", mismatches "
                 << bad << (n == 256 ? " (full)" : " (sampled)") << "; ";
        o.require(bad == 0, "equivalence at N=" + std::to_string(n));
        o.require(r.stats.output_depth <= depth_cap, "depth budget at N=" + std::to_string(n));
        o.require(r.stats.output_size <= size_cap, "size budget at N=" + std::to_string(n));
        o.require(validate(r.grammar).ok(), "validity at N=" + std::to_string(n));
    }
}

void criterion4(Outcome& o) {
    std::vector<double> depth_ratio, size_ratio;
    for (int e = 8; e <= 14; e += 2) {
        const Dim n = Dim{1} << e;
        Grammar g = build_spiral(n, 1.0);
        BalanceResult r = balance_to_tslp(g);
        const std::size_t bad = sampled_mismatches(g, r.grammar, kSamples, n + 1);
        depth_ratio.push_back(r.stats.output_depth / log2d(double(n) * double(n)));
        size_ratio.push_back(double(r.stats.output_size) / double(r.stats.input_size));
        o.detail << "2^" << e << ": depth " << r.stats.output_depth << " (/log " << depth_ratio.back()
                 << "), size x" << size_ratio.back() << ", mismatches " << bad << "; ";
        o.require(bad == 0, "equivalence at 2^" + std::to_string(e));
        o.require(validate(r.grammar).ok(), "validity at 2^" + std::to_string(e));
    }
    auto spread = [](const std::vector<double>& v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi / *lo;
    };
    o.detail << "depth spread " << spread(depth_ratio) << ", size spread " << spread(size_ratio);
    o.require(spread(depth_ratio) <= kFlatnessRatio, "depth flatness");
    o.require(spread(size_ratio) <= kFlatnessRatio, "size flatness");
}

void criterion5(Outcome& o) {
    for (std::size_t g : {std::size_t{64}, std::size_t{256}, std::size_t{1024}}) {
        BalanceResult r = balance_1d(build_caterpillar(g));
        Matrix m = expand(r.grammar);
        const bool equal = m.rows() == 1 && m.cells() == std::u32string(g + 1, U'a');
        const double depth_cap = kOneDimDepthSlope * log2d(double(g) + 1) + kOneDimDepthOffset;
        o.detail << "g=" << g << ": depth " << r.stats.output_depth << "/" << depth_cap << ", size "
                 << r.stats.output_size << "/" << kOneDimSizePerSymbol * g << "; ";
        o.require(equal, "equivalence at g=" + std::to_string(g));
        o.require(r.grammar.is_plain(), "plain output at g=" + std::to_string(g));
        o.require(r.stats.output_depth <= depth_cap, "depth budget at g=" + std::to_string(g));
        o.require(r.stats.output_size <= kOneDimSizePerSymbol * g,
                  "size budget at g=" + std::to_string(g));
    }
}

void criterion6(Outcome& o, const std::vector<CorpusEntry>& grammars) {
    std::size_t queries = 0, wrong = 0, over = 0;
    for (std::size_t k = 0; k < grammars.size(); ++k) {
        const Grammar& g = grammars[k].grammar;
        Grammar t = balance_to_tslp(g).grammar;
        GeometryTable gg = compute_geometry(g), tg = compute_geometry(t);
        FastIndex idx(t, kFastEpsilon);
        const unsigned levels = idx.params().levels;
        const std::uint32_t bound = (tg.depth(t.start()) + levels - 1) / levels + 1;
        for (Position p : sample_positions(idx.dims(), kSamples, 1000 + k)) {
            const char32_t want = access_plain(g, gg, p.x, p.y).ch;
            const AccessResult fast = idx.access(p.x, p.y);
            wrong += access_tslp(t, tg, p.x, p.y).ch != want || fast.ch != want;
            over += fast.visits > bound;
            ++queries;
        }
    }
    Grammar g = build_spiral(Dim{1} << 14, 1.0);
    Grammar t = balance_to_tslp(g).grammar;
    FastIndex idx(t, kFastEpsilon);
    BenchReport rep = bench_access(g, t, idx, kSamples, 14);
    const double tslp = rep.paths[1].mean_visits, fast = rep.paths[2].mean_visits;
    o.detail << queries << " queries over " << grammars.size() << " grammars, " << wrong
             << " disagreements, " << over << " over the visit bound; 2^14 mean visits tslp "
             << tslp << " fast " << fast << " (K=" << idx.params().levels << ")";
    o.require(wrong == 0, "path agreement");
    o.require(over == 0, "visit bound");
    o.require(fast <= kFastVisitShare * tslp, "fast visit share");
}

void criterion7(Outcome& o, const std::vector<CorpusEntry>& grammars) {
    std::size_t checked = 0, oversize = 0, wrong = 0;
    for (const CorpusEntry& e : grammars) {
        const Grammar& g = e.grammar;
        GeometryTable geo = compute_geometry(g);
        const Dims d = geo.dims(g.start());
        for (MarginSide side :
             {MarginSide::Top, MarginSide::Bottom, MarginSide::Left, MarginSide::Right}) {
            Grammar m = margin_slp(g, side);
            oversize += m.size() > g.size();
            Matrix got = expand(m);
            const bool across = side == MarginSide::Top || side == MarginSide::Bottom;
            const Dim len = across ? d.cols : d.rows;
            if (got.rows() != 1 || got.cols() != len) {
                ++wrong;
                continue;
            }
            // Every margin cell against direct access into the original.
            for (Dim i = 1; i <= len; ++i) {
                Dim x = side == MarginSide::Top ? 1 : side == MarginSide::Bottom ? d.rows : i;
                Dim y = side == MarginSide::Left ? 1 : side == MarginSide::Right ? d.cols : i;
                if (got.at(1, i) != access_plain(g, geo, x, y).ch) {
                    ++wrong;
                    break;
                }
            }
            ++checked;
        }
    }
    o.detail << checked << " margins, " << oversize << " larger than |G|, " << wrong << " wrong";
    o.require(oversize == 0, "margin size");
    o.require(wrong == 0, "margin expansion");
}

void criterion8(Outcome& o) {
    const std::size_t s8 = symbols(build_spiral(Dim{1} << 8, 1.0));
    const std::size_t s16 = symbols(build_spiral(Dim{1} << 16, 1.0));
    const double spiral_ratio = double(s16) / double(s8);

    const std::size_t c8 = symbols(build_cnm(Dim{1} << 8, 1024));
    const std::size_t c16 = symbols(build_cnm(Dim{1} << 16, 1024));
    const double cnm_ratio = double(c16) / double(c8);

    auto seq = [](unsigned k) { return build_cnm_sequence(64, 64, 4, k).grammar.symbol_count(); };
    const std::size_t slope = (seq(4) - seq(2)) / 2;
    const std::size_t grow = seq(16) - seq(8);

    o.detail << "spiral " << s8 << " -> " << s16 << " symbols (x" << spiral_ratio << ", cap x"
             << kSpiralCountRatio << "); C " << c8 << " -> " << c16 << " (x" << cnm_ratio
             << "); sequence k=8..16 adds " << grow << " with fitted slope " << slope;
    o.require(spiral_ratio <= kSpiralCountRatio, "spiral count ratio");
    o.require(cnm_ratio <= kCnmCountRatio, "C_{N,M} count ratio");
    o.require(slope <= kSequenceSlopeCap && grow <= slope * 8, "sequence slope");
}

void criterion9(Outcome& o, const std::vector<CorpusEntry>& grammars, const Grammar& holed) {
    std::size_t round_trip_bad = 0;
    for (const CorpusEntry& e : grammars) round_trip_bad += !(parse_grammar(emit_grammar(e.grammar)) == e.grammar);
    round_trip_bad += !(parse_grammar(emit_grammar(holed)) == holed);

    std::mt19937_64 rng(99);
    std::size_t pred_bad = 0;
    for (std::size_t c = 0; c < kPredecessorCases; ++c) {
        std::vector<Dim> keys(rng() % 64);
        for (Dim& k : keys) k = rng() % 1000;
        const Dim x = rng() % 1100;
        std::optional<Dim> scan;
        for (Dim k : keys)
            if (k <= x && (!scan || k > *scan)) scan = k;
        pred_bad += PredecessorSet(keys).predecessor(x) != scan;
    }

    std::size_t fuzz_bad = 0;
    for (std::uint64_t seed = 0; seed < kRandomGrammars; ++seed) {
        Grammar g = random_grammar(0x5eed0000 + seed, kRandomSymbols, kRandomMaxDim);
        bool ok = validate(g).ok();
        Matrix m = expand(g);
        GeometryTable geo = compute_geometry(g);
        for (Dim x = 1; ok && x <= m.rows(); ++x)
            for (Dim y = 1; ok && y <= m.cols(); ++y) ok = access_plain(g, geo, x, y).ch == m.at(x, y);
        Grammar t = balance_to_tslp(g).grammar;
        ok = ok && validate(t).ok() && expand(t) == m;
        fuzz_bad += !ok;
    }
    o.detail << grammars.size() + 1 << " round trips (" << round_trip_bad << " bad), "
             << kPredecessorCases << " predecessor cases (" << pred_bad << " bad), "
             << kRandomGrammars << " fuzz seeds (" << fuzz_bad << " bad)";
    o.require(round_trip_bad == 0, "round trip");
    o.require(pred_bad == 0, "predecessor");
    o.require(fuzz_bad == 0, "fuzz");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string data = argc > 1 ? argv[1] : "tests/data";
    const std::vector<CorpusEntry> grammars = corpus();
    const Grammar holed = read_grammar_file(data + "/small_holed.tslp");

    std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"gadget oracles", criterion1},
        {"distinct block count", criterion2},
        {"plain 2D rebalancing", criterion3},
        {"TSLP balancing flatness", criterion4},
        {"1D balancing budgets", criterion5},
        {"random access", [&](Outcome& o) { criterion6(o, grammars); }},
        {"margin extraction", [&](Outcome& o) { criterion7(o, grammars); }},
        {"size signatures", criterion8},
        {"infrastructure", [&](Outcome& o) { criterion9(o, grammars, holed); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("criterion %zu (%s): %s in %.1fs: %s\n", i + 1, criteria[i].first.c_str(),
                    o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
