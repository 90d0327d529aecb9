// Command-line front end. Exit codes: 0 success, 1 invalid input or failed
// check, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "gridslp/access.hpp"
#include "gridslp/balance.hpp"
#include "gridslp/errors.hpp"
#include "gridslp/fast_access.hpp"
#include "gridslp/gadgets.hpp"
#include "gridslp/kernels.hpp"
#include "gridslp/serialize.hpp"
#include "gridslp/transforms.hpp"
#include "gridslp/validate.hpp"

using namespace gridslp;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Validation failure already reported on stderr.
struct Rejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Grammar load(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        text = read_text_file(path);
    }
    Grammar g = parse_grammar(text);
    ValidationReport rep = validate(g);
    if (!rep.ok()) {
        for (const Violation& v : rep.violations) {
            std::cerr << path << ": " << to_string(v.kind);
            if (v.symbol != kNoSymbol) {
                std::cerr << " at production " << v.symbol << " (" << g.name(v.symbol) << ")";
            }
            std::cerr << ": " << v.message << "\n";
        }
        throw Rejected("invalid grammar");
    }
    return g;
}

void write_text(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error("cannot write " + out);
    f << text;
    if (!f) throw Error("cannot write " + out);
}

void write_grammar(const Grammar& g, const std::string& out) { write_text(emit_grammar(g), out); }

Dim max_cells(std::optional<Dim> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("GRIDSLP_MAX_CELLS"); env && *env) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || v == 0) throw UsageError("GRIDSLP_MAX_CELLS must be a positive integer");
        return v;
    }
    return kDefaultMaxCells;
}

json stats_json(const Grammar& g) {
    GeometryTable geo = compute_geometry(g);
    Dims d = geo.dims(g.start());
    return json{{"kind", g.is_plain() ? "SLP2D" : "TSLP2D"},
                {"symbols", g.symbol_count()},
                {"size", g.size()},
                {"depth", geo.depth(g.start())},
                {"height", d.rows},
                {"width", d.cols},
                {"holed", !g.is_plain()}};
}

json balance_json(const BalanceStats& s) {
    return json{{"inputSize", s.input_size},       {"outputSize", s.output_size},
                {"inputDepth", s.input_depth},     {"outputDepth", s.output_depth},
                {"stringArea", s.string_area},     {"depthSlope", s.depth_slope},
                {"depthOffset", s.depth_offset}};
}

std::string char_text(char32_t c) { return to_utf8(c); }

struct Options {
    std::string input, against, output, side = "top", gadget;
    std::optional<Dim> max_cells;
    Dim x = 0, y = 0;
    bool fast = false, normalize = false, report = false;
    double epsilon = 3.0, c = 1.0;
    std::size_t samples = 10000, queries = 10000, symbols = 50;
    std::uint64_t seed = 1;
    unsigned threads = 1, times = 1, n = 3, k = 0;
    Dim rows = 0, cols = 0, step = 0, side_len = 0, max_dim = 16;
};

int cmd_gen(const Options& o) {
    Grammar g;
    const std::string& kind = o.gadget;
    if (kind == "bin") {
        g = build_bin(o.n);
    } else if (kind == "shiftbin") {
        g = build_shiftbin(o.n);
    } else if (kind == "cnm") {
        g = build_cnm(o.rows, o.cols);
    } else if (kind == "cnmseq") {
        g = build_cnm_sequence(o.rows, o.cols, o.step, o.k).grammar;
    } else if (kind == "spiral") {
        g = build_spiral(o.side_len, o.c);
    } else if (kind == "random") {
        g = random_grammar(o.seed, o.symbols, o.max_dim);
    } else if (kind == "caterpillar") {
        g = build_caterpillar(o.symbols);
    } else {
        throw UsageError("unknown gadget '" + kind + "'");
    }
    if (o.normalize) g = compact(g);
    write_grammar(g, o.output);
    return kExitOk;
}

int cmd_expand(const Options& o) {
    Grammar g = load(o.input);
    write_text(expand(g, max_cells(o.max_cells)).to_text(), o.output);
    return kExitOk;
}

int cmd_access(const Options& o) {
    Grammar g = load(o.input);
    json out;
    AccessResult r;
    if (o.fast) {
        Grammar t = balance_to_tslp(g).grammar;
        FastIndex idx(t, o.epsilon);
        r = idx.access(o.x, o.y);
        out["path"] = "fast";
        out["levels"] = idx.params().levels;
    } else {
        GeometryTable geo = compute_geometry(g);
        r = g.is_plain() ? access_plain(g, geo, o.x, o.y) : access_tslp(g, geo, o.x, o.y);
        out["path"] = g.is_plain() ? "plain" : "tslp";
    }
    out["x"] = o.x;
    out["y"] = o.y;
    out["char"] = char_text(r.ch);
    out["visits"] = r.visits;
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_verify(const Options& o) {
    Grammar a = load(o.input);
    Grammar b = load(o.against);
    GeometryTable ga = compute_geometry(a), gb = compute_geometry(b);
    const Dims da = ga.dims(a.start()), db = gb.dims(b.start());
    json out{{"equal", false}};
    if (da != db) {
        out["method"] = "dims";
        out["dims"] = {{da.rows, da.cols}, {db.rows, db.cols}};
        std::cout << out.dump() << "\n";
        return kExitInvalid;
    }
    const Dim cap = max_cells(o.max_cells);
    std::uint64_t checked = 0, mismatches = 0;
    std::optional<Position> first;
    if (saturating_mul(da.rows, da.cols) <= cap) {
        out["method"] = "full";
        Matrix ma = expand(a, ga, a.start(), cap), mb = expand(b, gb, b.start(), cap);
        for (Dim x = 1; x <= da.rows; ++x) {
            for (Dim y = 1; y <= da.cols; ++y) {
                ++checked;
                if (ma.at(x, y) != mb.at(x, y)) {
                    ++mismatches;
                    if (!first) first = Position{x, y};
                }
            }
        }
    } else {
        out["method"] = "sampled";
        out["seed"] = o.seed;
        for (Position p : sample_positions(da, o.samples, o.seed)) {
            ++checked;
            if (access_tslp(a, ga, p.x, p.y).ch != access_tslp(b, gb, p.x, p.y).ch) {
                ++mismatches;
                if (!first) first = p;
            }
        }
    }
    out["equal"] = mismatches == 0;
    out["checked"] = checked;
    out["mismatches"] = mismatches;
    if (first) out["firstMismatch"] = {first->x, first->y};
    std::cout << out.dump() << "\n";
    return mismatches == 0 ? kExitOk : kExitInvalid;
}

int cmd_bench(const Options& o) {
    Grammar g = load(o.input);
    Grammar t = balance_to_tslp(g).grammar;
    FastIndex idx(t, o.epsilon);
    BenchReport rep = bench_access(g, t, idx, o.queries, o.seed, o.threads);
    json paths = json::array();
    for (const PathReport& p : rep.paths) {
        paths.push_back({{"path", p.path},
                         {"meanVisits", p.mean_visits},
                         {"maxVisits", p.max_visits},
                         {"nanosPerQuery", p.nanos_per_query}});
    }
    json out{{"queries", rep.queries},   {"seed", rep.seed},
             {"threads", rep.threads},   {"epsilon", o.epsilon},
             {"levels", idx.params().levels},
             {"indexRules", idx.rule_count()},
             {"indexCells", idx.cell_count()},
             {"paths", paths}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int dispatch(const std::string& name, const Options& o) {
    if (name == "gen") return cmd_gen(o);
    if (name == "stats") {
        std::cout << stats_json(load(o.input)).dump() << "\n";
        return kExitOk;
    }
    if (name == "expand") return cmd_expand(o);
    if (name == "access") return cmd_access(o);
    if (name == "verify") return cmd_verify(o);
    if (name == "bench") return cmd_bench(o);

    Grammar g = load(o.input);
    if (name == "balance") {
        BalanceResult r = balance_to_tslp(g);
        if (o.report) std::cerr << balance_json(r.stats).dump() << "\n";
        write_grammar(r.grammar, o.output);
    } else if (name == "linearize") {
        write_grammar(linearize_rows(g), o.output);
    } else if (name == "rebalance") {
        RebalanceResult r = rebalance_plain_2d(g);
        if (o.report) {
            const RebalanceStats& s = r.stats;
            std::cerr << json{{"inputSize", s.input_size},
                              {"outputSize", s.output_size},
                              {"inputDepth", s.input_depth},
                              {"outputDepth", s.output_depth},
                              {"linearSize", s.linear_size},
                              {"balancedSize", s.balanced_size},
                              {"balancedDepth", s.balanced_depth}}
                             .dump()
                      << "\n";
        }
        write_grammar(r.grammar, o.output);
    } else if (name == "rotate") {
        for (unsigned i = 0; i < o.times % 4; ++i) g = rotate_cw(g);
        write_grammar(g, o.output);
    } else if (name == "margins") {
        std::optional<MarginSide> side = parse_margin_side(o.side);
        if (!side) throw UsageError("--side must be top, bottom, left or right");
        write_grammar(margin_slp(g, *side), o.output);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-dimensional straight-line programs: build, transform, balance, query."};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* c) {
        c->add_option("file", o.input, "grammar file, '-' for stdin")->required();
    };
    auto add_output = [&](CLI::App* c) {
        c->add_option("-o,--output", o.output, "output file (default stdout)");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate a gadget grammar");
    gen->add_option("--gadget", o.gadget, "bin|shiftbin|cnm|cnmseq|spiral|random|caterpillar")
        ->required();
    gen->add_option("--bits", o.n, "n for bin/shiftbin (N = 2^n)");
    gen->add_option("--rows", o.rows, "N for cnm/cnmseq");
    gen->add_option("--cols", o.cols, "M for cnm/cnmseq");
    gen->add_option("--step", o.step, "row step for cnmseq");
    gen->add_option("--k", o.k, "last sequence index for cnmseq");
    gen->add_option("--n", o.side_len, "side length for spiral");
    gen->add_option("--c", o.c, "depth constant for spiral");
    gen->add_option("--seed", o.seed, "seed for random");
    gen->add_option("--symbols", o.symbols, "symbol count for random, length-1 for caterpillar");
    gen->add_option("--max-dim", o.max_dim, "dimension cap for random");
    gen->add_flag("--normalize", o.normalize, "drop unreachable symbols and renumber");
    add_output(gen);

    CLI::App* stats = app.add_subcommand("stats", "print size and shape as JSON");
    add_input(stats);

    CLI::App* exp = app.add_subcommand("expand", "write the derived matrix");
    add_input(exp);
    exp->add_option("--max-cells", o.max_cells, "cell cap (default 2^26 or GRIDSLP_MAX_CELLS)");
    add_output(exp);

    CLI::App* acc = app.add_subcommand("access", "read one cell");
    add_input(acc);
    acc->add_option("x", o.x, "row, 1-based")->required();
    acc->add_option("y", o.y, "column, 1-based")->required();
    acc->add_flag("--fast", o.fast, "balance, index and query the index");
    acc->add_option("--epsilon", o.epsilon, "index trade-off parameter");

    const std::pair<const char*, const char*> transforms[] = {
        {"balance", "balance into a grammar with holes"},
        {"linearize", "concatenate the rows into one line"},
        {"rebalance", "rebalance without holes"},
        {"rotate", "rotate clockwise"},
        {"margins", "extract one border as a 1D grammar"},
    };
    for (auto [name, help] : transforms) {
        CLI::App* c = app.add_subcommand(name, help);
        add_input(c);
        add_output(c);
        if (std::string(name) == "balance" || std::string(name) == "rebalance") {
            c->add_flag("--report", o.report, "print statistics as JSON on stderr");
        }
        if (std::string(name) == "rotate") {
            c->add_option("--times", o.times, "quarter turns clockwise");
        }
        if (std::string(name) == "margins") {
            c->add_option("--side", o.side, "top|bottom|left|right")->required();
        }
    }

    CLI::App* ver = app.add_subcommand("verify", "compare two grammars");
    add_input(ver);
    ver->add_option("--against", o.against, "second grammar")->required();
    ver->add_option("--samples", o.samples, "sampled positions when too large to expand");
    ver->add_option("--seed", o.seed, "sampling seed");
    ver->add_option("--max-cells", o.max_cells, "expansion cap");

    CLI::App* bench = app.add_subcommand("bench", "time the access paths");
    add_input(bench);
    bench->add_option("--queries", o.queries, "sampled positions");
    bench->add_option("--seed", o.seed, "sampling seed");
    bench->add_option("--epsilon", o.epsilon, "index trade-off parameter");
    bench->add_option("--threads", o.threads, "query threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutOfBounds& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Rejected&) {
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
