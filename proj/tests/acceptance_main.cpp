// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// hard failure. Criterion 9 is skipped unless the NP data paths are given
// via MBSL_NP_TRAIN / MBSL_NP_TEST; criterion 10 is a soft throughput check
// that warns instead of failing.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mbsl/bracketer.hpp"
#include "mbsl/corpus.hpp"
#include "mbsl/eval.hpp"
#include "mbsl/scoring.hpp"
#include "mbsl/trie.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace mbsl;

namespace {

// Reference figures of the first seed-42 synthetic run; later runs must stay
// within +/-0.5% absolute.
constexpr double kPinnedRecall = 0.9548;
constexpr double kPinnedPrecision = 1.0;
constexpr double kPinTolerance = 0.005;

struct Outcome {
    bool pass = true;
    bool skipped = false;
    bool soft = false;
    std::string detail;
};

struct Check {
    Outcome& outcome;
    void operator()(bool ok, const std::string& what) {
        if (!ok) {
            outcome.pass = false;
            if (!outcome.detail.empty()) outcome.detail += "; ";
            outcome.detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Corpus slice(const Corpus& corpus, std::size_t begin, std::size_t end) {
    std::vector<BracketedSentence> sentences(
        corpus.sentences().begin() + static_cast<std::ptrdiff_t>(begin),
        corpus.sentences().begin() + static_cast<std::ptrdiff_t>(end));
    return Corpus(corpus.symbols_ptr(), std::move(sentences));
}

EvalReport run_pipeline(const Corpus& train, const Corpus& test, std::size_t context,
                        double threshold) {
    MemoryTrie trie = build_memory(train, context);
    ScoreConfig cfg;
    cfg.context = context;
    cfg.tile_threshold = threshold;
    std::vector<BracketedSentence> predictions;
    predictions.reserve(test.size());
    for (const BracketedSentence& s : test.sentences())
        predictions.push_back(bracket_sentence(s.tags, trie, cfg));
    return evaluate(test, predictions);
}

// 1. Tile-count formula and the ten-tile listing.
Outcome criterion_tile_formula() {
    Outcome outcome;
    Check check{outcome};
    SymbolTable table;
    for (std::size_t l = 1; l <= 8; ++l) {
        for (std::size_t cn = 1; cn <= 3; ++cn) {
            BracketedSentence s;
            for (std::size_t i = 0; i < l + 2 * cn; ++i)
                s.tags.push_back(table.intern("T" + std::to_string(i)));
            Span instance{cn, cn + l};
            s.instances.push_back(instance);
            std::size_t got = enumerate_instance_tiles(s, instance, cn).size();
            std::size_t expected = 2 * cn * (l + 2) + 2 * l + cn * cn + 1;
            check(got == expected, "l=" + std::to_string(l) + " cn=" + std::to_string(cn) +
                                       ": " + std::to_string(got) + " != " +
                                       std::to_string(expected));
        }
    }

    SymbolTable t2;
    Corpus c = parse_corpus_text("VB [ NN ] IN\n", t2);
    auto tiles = enumerate_instance_tiles(c.sentence(0), c.sentence(0).instances[0], 1);
    const std::vector<std::string> expected = {
        "VB [", "VB [ NN", "VB [ NN ]", "VB [ NN ] IN", "[ NN",
        "[ NN ]", "[ NN ] IN", "NN ]", "NN ] IN", "] IN",
    };
    check(tiles.size() == expected.size(), "ten-tile listing size");
    for (std::size_t i = 0; i < std::min(tiles.size(), expected.size()); ++i)
        check(oracle::to_text(tiles[i], t2) == expected[i],
              "tile " + std::to_string(i) + " is '" + oracle::to_text(tiles[i], t2) +
                  "', wanted '" + expected[i] + "'");
    if (outcome.pass) outcome.detail = "24 (l, cn) pairs and the 10-tile listing";
    return outcome;
}

// 2. Five-tile fixture: connects and cover statistics.
Outcome criterion_tile_fixture() {
    Outcome outcome;
    Check check{outcome};
    auto tile = [](std::size_t a, std::size_t b) { return Tile{a, b, {1, 1}, 1.0}; };
    Tile t1 = tile(1, 6), t2 = tile(1, 3), t3 = tile(2, 4), t4 = tile(4, 6),
         t5 = tile(5, 7);

    check(connects(t2, t4), "tiles 2 and 4 must connect");
    check(!connects(t2, t5), "tiles 2 and 5 must not connect (gap)");
    check(!connects(t1, t4), "tiles 1 and 4 must not connect (inclusion)");

    std::vector<Tile> tiles{t1, t2, t3, t4, t5};
    auto stats = cover_stats(build_cover_graph(tiles, 2, 6));
    auto brute = oracle::brute_cover_stats(tiles, 2, 6);
    check(stats.has_value() && brute.has_value(), "cover stats must exist");
    if (stats && brute) {
        check(*stats == *brute, "DP and enumeration disagree");
        check(stats->num == 10, "num=" + std::to_string(stats->num) + " != 10");
        check(stats->minsize == 1, "minsize != 1");
        check(stats->maxcontext == 2, "maxcontext != 2");
        check(stats->maxoverlap == 5, "maxoverlap != 5");
    }
    if (outcome.pass) outcome.detail = "num=10 minsize=1 maxcontext=2 maxoverlap=5";
    return outcome;
}

// 3. Trie counts equal a naive quadratic scan on random corpora.
Outcome criterion_trie_oracle() {
    Outcome outcome;
    Check check{outcome};
    std::mt19937_64 rng(1003);
    std::size_t corpora = 0, nodes = 0;
    for (int iter = 0; iter < 120 && outcome.pass; ++iter) {
        SymbolTable table;
        Corpus corpus = oracle::random_corpus(rng, table, 50, 15, 8);
        std::size_t cn = 1 + iter % 3;
        MemoryTrie trie = build_memory(corpus, cn);
        oracle::NaiveMemory naive = oracle::naive_memory(corpus, cn);
        ++corpora;

        trie.for_each_node([&](const std::vector<Symbol>& path, const TileCounts& counts) {
            ++nodes;
            if (counts.positive != naive.positive(path))
                check(false, "positive mismatch at iter " + std::to_string(iter));
            if (counts.total != naive.total(path))
                check(false, "total mismatch at iter " + std::to_string(iter));
        });
        for (const auto& [tile_seq, count] : naive.tile_counts) {
            auto counts = trie.lookup(tile_seq);
            if (!counts || counts->positive != count) {
                check(false, "missing tile at iter " + std::to_string(iter));
                break;
            }
        }
    }
    if (outcome.pass)
        outcome.detail = std::to_string(corpora) + " corpora, " + std::to_string(nodes) +
                         " nodes, exact";
    return outcome;
}

// 4. Cover-statistics DP equals brute-force path enumeration.
Outcome criterion_cover_oracle() {
    Outcome outcome;
    Check check{outcome};
    std::mt19937_64 rng(1004);
    std::size_t graphs = 0;
    for (int iter = 0; iter < 600 && outcome.pass; ++iter) {
        std::size_t l = 1 + rng() % 6;
        std::size_t cn = 1 + rng() % 3;
        std::size_t left = rng() % (cn + 1), right = rng() % (cn + 1);
        std::size_t ob = left, cb = left + l + 1;
        std::size_t size = l + left + right + 2;
        auto tiles = oracle::random_tiles(rng, size, ob, cb, 12);
        ++graphs;

        auto dp = cover_stats(build_cover_graph(tiles, ob, cb));
        auto brute = oracle::brute_cover_stats(tiles, ob, cb);
        check(dp.has_value() == brute.has_value(),
              "cover existence differs at iter " + std::to_string(iter));
        if (dp && brute && !(*dp == *brute))
            check(false, "stats differ at iter " + std::to_string(iter));
    }
    if (outcome.pass) outcome.detail = std::to_string(graphs) + " tile sets, all four fields exact";
    return outcome;
}

// 5. The worked training example.
Outcome criterion_worked_example() {
    Outcome outcome;
    Check check{outcome};
    SymbolTable table;
    Corpus corpus = parse_corpus_text("[ NN ] VB [ ADJ NN NN ] RB PP [ NN ] .\n", table);
    MemoryTrie trie = build_memory(corpus, 1);

    auto counts = trie.lookup(oracle::syms(table, "NN ]"));
    check(counts.has_value(), "tile 'NN ]' missing");
    if (counts) {
        check(counts->positive == 3, "pos=" + std::to_string(counts->positive) + " != 3");
        check(counts->total == 4, "total=" + std::to_string(counts->total) + " != 4");
        check(tile_score(*counts) == 0.75, "f_T != 0.75");
    }

    // 'NN [ NN' was never stored (no instance follows an NN immediately),
    // while its bare sequence occurs once inside [ADJ NN NN]: negative-only
    // evidence, pos=0 < total=1.
    auto tile = oracle::syms(table, "NN [ NN");
    check(!trie.lookup(tile).has_value(), "'NN [ NN' must have no positive evidence");
    oracle::NaiveMemory naive = oracle::naive_memory(corpus, 1);
    check(naive.positive(tile) == 0, "oracle positive for 'NN [ NN' != 0");
    check(naive.total(tile) == 1, "oracle total for 'NN [ NN' != 1");
    if (outcome.pass) outcome.detail = "lookup('NN ]') = (3, 4), f_T = 0.75; 'NN [ NN' negative";
    return outcome;
}

// 6. F_beta arithmetic.
Outcome criterion_f_beta() {
    Outcome outcome;
    Check check{outcome};
    double f = f_beta_measure(0.771, 0.898, 1.0);
    check(std::abs(f - 0.830) <= 0.0005,
          "F(0.771, 0.898) = " + std::to_string(f) + " not within 0.0005 of 0.830");
    for (double p : {0.25, 1.0 / 3.0, 0.916})
        check(f_beta_measure(p, p, 1.0) == p, "F(P, P) != P exactly");
    if (outcome.pass) outcome.detail = "F(0.771, 0.898) = " + std::to_string(f);
    return outcome;
}

// 7. Synthetic end-to-end run.
Outcome criterion_synthetic_end_to_end() {
    Outcome outcome;
    Check check{outcome};
    SymbolTable table;
    Corpus all = generate_synthetic(42, 1200, table);
    Corpus train = slice(all, 0, 1000);
    Corpus test = slice(all, 1000, 1200);
    check(train.instance_count() >= 800, "too few training instances");

    EvalReport report = run_pipeline(train, test, 2, 0.5);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "recall=%.4f precision=%.4f", report.recall,
                  report.precision);
    outcome.detail = buf;
    check(report.recall >= 0.90, "recall below 0.90");
    check(report.precision >= 0.90, "precision below 0.90");
    check(std::abs(report.recall - kPinnedRecall) <= kPinTolerance,
          "recall drifted from the pinned reference");
    check(std::abs(report.precision - kPinnedPrecision) <= kPinTolerance,
          "precision drifted from the pinned reference");
    return outcome;
}

// 8. Byte-identical CLI bracketing across job counts.
Outcome criterion_cli_determinism() {
    Outcome outcome;
    Check check{outcome};
    fs::path dir = fs::temp_directory_path() /
                   ("mbsl-accept-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    {
        SymbolTable table;
        Corpus corpus = generate_synthetic(8001, 300, table);
        std::ofstream train(dir / "train.txt");
        write_corpus(corpus, train);
        SymbolTable table2;
        Corpus input = generate_synthetic(8002, 120, table2);
        std::ofstream in(dir / "input.txt");
        write_corpus(input, in);
    }

    auto run = [&](const std::string& args) {
        std::string cmd = std::string(MBSL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    check(run("train " + (dir / "train.txt").string() + " --out " +
              (dir / "mem.snap").string() + " --context 2") == 0,
          "train failed");
    check(run("bracket " + (dir / "mem.snap").string() + " " +
              (dir / "input.txt").string() + " " + (dir / "out1.txt").string() +
              " --jobs 1") == 0,
          "bracket --jobs 1 failed");
    check(run("bracket " + (dir / "mem.snap").string() + " " +
              (dir / "input.txt").string() + " " + (dir / "out2.txt").string() +
              " --jobs 8") == 0,
          "bracket --jobs 8 failed");
    check(run("bracket " + (dir / "mem.snap").string() + " " +
              (dir / "input.txt").string() + " " + (dir / "out3.txt").string() +
              " --jobs 1") == 0,
          "second bracket --jobs 1 failed");

    std::string out1 = slurp(dir / "out1.txt");
    check(!out1.empty() && out1 == slurp(dir / "out2.txt"),
          "--jobs 1 and --jobs 8 outputs differ");
    check(out1 == slurp(dir / "out3.txt"), "repeated runs differ");

    std::error_code ec;
    fs::remove_all(dir, ec);
    if (outcome.pass) outcome.detail = "byte-identical across --jobs 1/8 and reruns";
    return outcome;
}

// 9. Conditional: the NP extraction data, when supplied.
Outcome criterion_np_data() {
    Outcome outcome;
    const char* train_path = std::getenv("MBSL_NP_TRAIN");
    const char* test_path = std::getenv("MBSL_NP_TEST");
    if (!train_path || !test_path) {
        outcome.skipped = true;
        outcome.detail = "set MBSL_NP_TRAIN and MBSL_NP_TEST to enable";
        return outcome;
    }
    Check check{outcome};
    SymbolTable table;
    std::ifstream train_in(train_path), test_in(test_path);
    if (!train_in || !test_in) {
        outcome.pass = false;
        outcome.detail = "cannot open the NP data files";
        return outcome;
    }
    Corpus train = parse_corpus(train_in, table);
    Corpus test = parse_corpus(test_in, table);
    EvalReport report = run_pipeline(train, test, 3, 0.6);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "recall=%.3f precision=%.3f", report.recall,
                  report.precision);
    outcome.detail = buf;
    check(std::abs(report.recall - 0.916) <= 0.010, "recall not within 1.0 of 91.6");
    check(std::abs(report.precision - 0.916) <= 0.010,
          "precision not within 1.0 of 91.6");
    return outcome;
}

// 10. Soft throughput check.
Outcome criterion_throughput() {
    Outcome outcome;
    outcome.soft = true;
    SymbolTable table;
    Corpus corpus = generate_synthetic(777, 9000, table);

    auto t0 = std::chrono::steady_clock::now();
    MemoryTrie trie = build_memory(corpus, 3);
    double build_seconds = seconds_since(t0);

    ScoreConfig cfg;
    cfg.context = 3;
    cfg.tile_threshold = 0.6;
    t0 = std::chrono::steady_clock::now();
    std::size_t bracketed = 0;
    for (const BracketedSentence& s : corpus.sentences()) {
        bracket_sentence(s.tags, trie, cfg);
        ++bracketed;
    }
    double bracket_seconds = seconds_since(t0);
    double per_minute = static_cast<double>(bracketed) / bracket_seconds * 60.0;

    char buf[128];
    std::snprintf(buf, sizeof(buf), "build %.2fs (limit 16s), %.0f sentences/min (floor 1000)",
                  build_seconds, per_minute);
    outcome.detail = buf;
    if (build_seconds > 16.0 || per_minute < 1000.0) outcome.pass = false;
    return outcome;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"tile-count formula and ten-tile listing", criterion_tile_formula},
        {"five-tile fixture: connects and cover statistics", criterion_tile_fixture},
        {"trie counts equal the naive-scan oracle", criterion_trie_oracle},
        {"cover statistics DP equals path enumeration", criterion_cover_oracle},
        {"worked example counts", criterion_worked_example},
        {"F_beta arithmetic", criterion_f_beta},
        {"synthetic end-to-end recall/precision", criterion_synthetic_end_to_end},
        {"CLI bracketing determinism across jobs", criterion_cli_determinism},
        {"NP data reproduction (conditional)", criterion_np_data},
        {"throughput (soft)", criterion_throughput},
    };

    bool failed = false;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome outcome = criteria[i].run();
        double secs = seconds_since(t0);
        const char* status = "PASS";
        if (outcome.skipped) {
            status = "SKIP";
        } else if (!outcome.pass) {
            status = outcome.soft ? "WARN" : "FAIL";
            if (!outcome.soft) failed = true;
        }
        std::printf("[%s] criterion %zu: %s%s%s (%.2fs)\n", status, i + 1,
                    criteria[i].name, outcome.detail.empty() ? "" : " — ",
                    outcome.detail.c_str(), secs);
    }
    return failed ? 1 : 0;
}
