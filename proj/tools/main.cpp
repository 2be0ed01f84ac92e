// Command-line front end: train a memory, bracket new text, and run the
// evaluation workflows (eval, sweep, cross-validation, learning curve).

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mbsl/bracketer.hpp"
#include "mbsl/corpus.hpp"
#include "mbsl/errors.hpp"
#include "mbsl/eval.hpp"
#include "mbsl/scoring.hpp"
#include "mbsl/trie.hpp"

namespace {

using namespace mbsl;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

// "-" selects stdin/stdout.
struct InputFile {
    explicit InputFile(const std::string& path) {
        if (path == "-") {
            stream = &std::cin;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw IoError("cannot open input file: " + path);
            stream = &file;
        }
    }
    std::ifstream file;
    std::istream* stream;
};

struct OutputFile {
    explicit OutputFile(const std::string& path) : path_(path) {
        if (path == "-") {
            stream = &std::cout;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw IoError("cannot open output file: " + path);
            stream = &file;
        }
    }
    void finish() {
        stream->flush();
        if (!*stream) throw IoError("failed writing output file: " + path_);
    }
    std::string path_;
    std::ofstream file;
    std::ostream* stream;
};

RetagRules load_rules(const std::string& path) {
    if (path.empty()) return RetagRules();
    return RetagRules::load(path);
}

std::vector<double> parse_double_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& spec) {
    std::vector<std::size_t> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoul(item));
    return out;
}

// Either "a,b,c" or "lo:hi:step" (inclusive endpoints).
std::vector<double> parse_threshold_spec(const std::string& spec) {
    if (spec.find(':') == std::string::npos) return parse_double_list(spec);
    double lo, hi, step;
    char c1, c2;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
        throw std::invalid_argument("bad threshold range '" + spec + "'");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        double t = lo + i * step;
        if (t > hi + 1e-9) break;
        out.push_back(t);
    }
    return out;
}

void print_report(const EvalReport& report, std::ostream& out) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "gold=%llu predicted=%llu tp=%llu\n"
                  "recall=%.3f precision=%.3f f_beta=%.3f (beta=%g)\n",
                  static_cast<unsigned long long>(report.gold_count),
                  static_cast<unsigned long long>(report.predicted_count),
                  static_cast<unsigned long long>(report.true_positives), report.recall,
                  report.precision, report.f_beta, report.beta);
    out << buf;
    out << "length  gold  predicted  correct\n";
    for (const auto& [len, bin] : report.by_length) {
        std::snprintf(buf, sizeof(buf), "%6zu %5llu %10llu %8llu\n", len,
                      static_cast<unsigned long long>(bin.gold),
                      static_cast<unsigned long long>(bin.predicted),
                      static_cast<unsigned long long>(bin.correct));
        out << buf;
    }
}

struct CorpusOptions {
    std::string retag_rules_path;
};

Corpus load_corpus(const std::string& path, SymbolTable& table,
                   const CorpusOptions& opts) {
    InputFile in(path);
    return parse_corpus(*in.stream, table, load_rules(opts.retag_rules_path));
}

// --- train ------------------------------------------------------------

int cmd_train(const std::string& corpus_path, const std::string& snapshot_path,
              std::size_t context, const CorpusOptions& copts) {
    SymbolTable table;
    Corpus corpus = load_corpus(corpus_path, table, copts);
    if (corpus.empty()) throw DataError("empty corpus");

    auto t0 = std::chrono::steady_clock::now();
    MemoryTrie trie = build_memory(corpus, context);
    auto t1 = std::chrono::steady_clock::now();
    double seconds = std::chrono::duration<double>(t1 - t0).count();

    OutputFile out(snapshot_path);
    trie.save_snapshot(*out.stream, table);
    out.finish();

    std::cerr << "sentences: " << corpus.size() << "\n"
              << "instances: " << corpus.instance_count() << "\n"
              << "words: " << corpus.word_count() << "\n"
              << "tiles: " << trie.tile_insertions() << "\n"
              << "nodes: " << trie.node_count() << "\n"
              << "context: " << context << "\n"
              << "build seconds: " << seconds << "\n";
    return kExitOk;
}

// --- bracket ----------------------------------------------------------

struct BracketJob {
    std::string line;        // raw input line
    TagSequence tags;        // empty for blank lines
    std::string output;
};

int cmd_bracket(const std::string& snapshot_path, const std::string& input_path,
                const std::string& output_path, ScoreConfig cfg,
                bool context_given, std::size_t jobs, const std::string& dump_path,
                const CorpusOptions& copts) {
    SymbolTable table;
    InputFile snap(snapshot_path);
    MemoryTrie trie = MemoryTrie::load_snapshot(*snap.stream, table);
    if (!context_given) cfg.context = trie.context_limit();
    cfg.validate();
    if (cfg.context > trie.context_limit())
        throw std::invalid_argument("--context exceeds the snapshot's context (" +
                                    std::to_string(trie.context_limit()) + ")");

    std::size_t known_tags = table.tag_count();
    RetagRules rules = load_rules(copts.retag_rules_path);

    std::vector<BracketJob> lines;
    {
        InputFile in(input_path);
        std::string raw;
        std::size_t lineno = 0;
        while (std::getline(*in.stream, raw)) {
            ++lineno;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            BracketJob job;
            job.line = raw;
            BracketedSentence sentence;
            if (parse_sentence_line(raw, lineno, table, rules, sentence))
                job.tags = std::move(sentence.tags);  // input brackets are ignored
            lines.push_back(std::move(job));
        }
    }

    // Tags first seen in the test input match nothing in the memory; they
    // only dilute candidates, so warn rather than fail.
    for (std::size_t i = known_tags; i < table.tag_count(); ++i)
        std::cerr << "warning: tag '" << table.tags()[i]
                  << "' does not occur in the training memory\n";

    if (jobs < 1) jobs = 1;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= lines.size()) break;
            if (lines[i].tags.empty()) continue;
            BracketedSentence result = bracket_sentence(lines[i].tags, trie, cfg);
            lines[i].output = serialize_sentence(result, table);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    OutputFile out(output_path);
    for (const BracketJob& job : lines) *out.stream << job.output << '\n';
    out.finish();

    if (!dump_path.empty()) {
        OutputFile dump(dump_path);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (lines[i].tags.empty()) continue;
            *dump.stream << "# sentence " << i + 1 << ": " << lines[i].line << '\n';
            dump_candidates(lines[i].tags, trie, cfg, table, *dump.stream);
        }
        dump.finish();
    }
    return kExitOk;
}

// --- eval / sweep / cv / curve -----------------------------------------

int cmd_eval(const std::string& gold_path, const std::string& predicted_path,
             double beta, const CorpusOptions& copts) {
    SymbolTable table;
    Corpus gold = load_corpus(gold_path, table, copts);
    Corpus predicted = load_corpus(predicted_path, table, copts);
    std::vector<BracketedSentence> pred_sentences(predicted.sentences().begin(),
                                                  predicted.sentences().end());
    EvalReport report = evaluate(gold, pred_sentences, beta);
    print_report(report, std::cout);
    return kExitOk;
}

int cmd_sweep(const std::string& train_path, const std::string& test_path,
              const std::string& thresholds_spec, const std::string& contexts_spec,
              const std::string& csv_path, double beta, const CorpusOptions& copts) {
    SymbolTable table;
    Corpus train = load_corpus(train_path, table, copts);
    Corpus test = load_corpus(test_path, table, copts);

    std::vector<double> thresholds = parse_threshold_spec(thresholds_spec);
    std::vector<std::size_t> contexts = parse_size_list(contexts_spec);
    SweepOptions options;
    options.beta = beta;
    std::vector<SweepPoint> points = sweep(train, test, thresholds, contexts, options);

    if (!csv_path.empty()) {
        OutputFile csv(csv_path);
        write_sweep_csv(points, *csv.stream);
        csv.finish();
    } else {
        write_sweep_csv(points, std::cout);
    }

    for (std::size_t cn : contexts) {
        const SweepPoint* be = breakeven_point(points, cn);
        if (!be) continue;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "breakeven cn=%zu theta_t=%.6g recall=%.3f precision=%.3f\n",
                      be->context, be->tile_threshold, be->recall, be->precision);
        std::cerr << buf;
    }
    return kExitOk;
}

int cmd_cv(const std::string& corpus_path, std::size_t folds,
           const std::string& thresholds_spec, const std::string& contexts_spec,
           std::optional<std::uint64_t> shuffle_seed, const std::string& csv_path,
           double beta, const CorpusOptions& copts) {
    SymbolTable table;
    Corpus corpus = load_corpus(corpus_path, table, copts);

    CrossValidationOptions options;
    options.beta = beta;
    options.shuffle_seed = shuffle_seed;
    CrossValidation cv = cross_validate(corpus, folds, parse_threshold_spec(thresholds_spec),
                                        parse_size_list(contexts_spec), options);

    char buf[160];
    std::snprintf(buf, sizeof(buf), "selected context=%zu tile-threshold=%.6g mean-f=%.4f\n",
                  cv.best_context, cv.best_threshold, cv.best_mean_f);
    std::cout << buf;
    for (std::size_t f = 0; f < cv.fold_reports.size(); ++f) {
        const EvalReport& r = cv.fold_reports[f];
        std::snprintf(buf, sizeof(buf),
                      "fold %zu: recall=%.3f precision=%.3f f_beta=%.3f\n", f + 1,
                      r.recall, r.precision, r.f_beta);
        std::cout << buf;
    }

    if (!csv_path.empty()) {
        OutputFile csv(csv_path);
        *csv.stream << "cn,theta_t,mean_f\n";
        for (const auto& g : cv.grid) {
            std::snprintf(buf, sizeof(buf), "%zu,%.6g,%.6f\n", g.context,
                          g.tile_threshold, g.mean_f);
            *csv.stream << buf;
        }
        csv.finish();
    }
    return kExitOk;
}

int cmd_curve(const std::string& train_path, const std::string& test_path,
              const std::string& fractions_spec, std::size_t context,
              double tile_threshold, const std::string& csv_path, double beta,
              const CorpusOptions& copts) {
    SymbolTable table;
    Corpus train = load_corpus(train_path, table, copts);
    Corpus test = load_corpus(test_path, table, copts);

    CurveOptions options;
    options.beta = beta;
    options.config.context = context;
    options.config.tile_threshold = tile_threshold;
    std::vector<CurvePoint> points =
        learning_curve(train, test, parse_double_list(fractions_spec), options);

    if (!csv_path.empty()) {
        OutputFile csv(csv_path);
        write_curve_csv(points, *csv.stream);
        csv.finish();
    } else {
        write_curve_csv(points, std::cout);
    }
    return kExitOk;
}

int cmd_generate(const std::string& output_path, std::uint64_t seed,
                 std::size_t sentences) {
    SymbolTable table;
    Corpus corpus = generate_synthetic(seed, sentences, table);
    OutputFile out(output_path);
    write_corpus(corpus, *out.stream);
    out.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memory-based bracketing of tag sequences"};
    app.require_subcommand(1);

    CorpusOptions copts;
    ScoreConfig cfg;

    // train
    auto* train = app.add_subcommand("train", "build a memory snapshot from a bracketed corpus");
    std::string train_corpus, train_out;
    std::size_t train_context = 3;
    train->add_option("corpus", train_corpus, "bracketed training corpus ('-' for stdin)")
        ->required();
    train->add_option("-o,--out", train_out, "snapshot output path")->required();
    train->add_option("-c,--context", train_context, "max context tags per side (cn)");
    train->add_option("--retag-rules", copts.retag_rules_path, "word<TAB>tag rules file");

    // bracket
    auto* bracket = app.add_subcommand("bracket", "bracket tag sequences using a snapshot");
    std::string br_snapshot, br_input, br_output = "-", br_dump;
    std::size_t br_jobs = 1;
    bracket->add_option("snapshot", br_snapshot, "memory snapshot")->required();
    bracket->add_option("input", br_input, "tag-sequence input, one sentence per line")
        ->required();
    bracket->add_option("output", br_output, "output path ('-' for stdout)");
    auto* br_ctx = bracket->add_option("-c,--context", cfg.context,
                                       "context size (default: snapshot's)");
    bracket->add_option("-t,--tile-threshold", cfg.tile_threshold, "theta_T");
    bracket->add_option("--candidate-threshold", cfg.candidate_threshold, "theta_C");
    std::string scoring_mode = "lex";
    bracket->add_option("--scoring", scoring_mode, "lex | linear")
        ->check(CLI::IsMember({"lex", "linear"}));
    bracket->add_option("--alpha", cfg.weights.alpha, "linear weight of num");
    bracket->add_option("--beta-weight", cfg.weights.beta, "linear weight of minsize");
    bracket->add_option("--gamma", cfg.weights.gamma, "linear weight of maxcontext");
    bracket->add_option("--delta", cfg.weights.delta, "linear weight of maxoverlap");
    bracket->add_option("--max-length", cfg.max_candidate_length,
                        "candidate length cap (0 = uncapped)");
    bracket->add_option("-j,--jobs", br_jobs, "worker threads");
    bracket->add_option("--dump", br_dump, "write per-candidate tile/cover diagnostics");
    bracket->add_option("--retag-rules", copts.retag_rules_path, "word<TAB>tag rules file");

    // eval
    auto* evalc = app.add_subcommand("eval", "complete-pattern recall/precision/F");
    std::string ev_gold, ev_pred;
    double beta = 1.0;
    evalc->add_option("gold", ev_gold, "gold bracketed corpus")->required();
    evalc->add_option("predicted", ev_pred, "predicted bracketed corpus")->required();
    evalc->add_option("--beta", beta, "F_beta weight");
    evalc->add_option("--retag-rules", copts.retag_rules_path, "word<TAB>tag rules file");

    // sweep
    auto* sweepc = app.add_subcommand("sweep", "threshold/context parameter sweep");
    std::string sw_train, sw_test, sw_csv;
    std::string thresholds_spec = "0.1:0.95:0.05";
    std::string contexts_spec = "1,2,3";
    sweepc->add_option("train", sw_train, "training corpus")->required();
    sweepc->add_option("test", sw_test, "test corpus")->required();
    sweepc->add_option("--thresholds", thresholds_spec, "list 'a,b,c' or range 'lo:hi:step'");
    sweepc->add_option("--contexts", contexts_spec, "comma-separated context sizes");
    sweepc->add_option("--out", sw_csv, "CSV output path (default stdout)");
    sweepc->add_option("--beta", beta, "F_beta weight");
    sweepc->add_option("--retag-rules", copts.retag_rules_path, "word<TAB>tag rules file");

    // cv
    auto* cvc = app.add_subcommand("cv", "k-fold cross-validation over the grid");
    std::string cv_corpus, cv_csv;
    std::size_t folds = 5;
    std::uint64_t cv_seed = 0;
    cvc->add_option("corpus", cv_corpus, "bracketed corpus")->required();
    cvc->add_option("-k,--folds", folds, "fold count");
    cvc->add_option("--thresholds", thresholds_spec, "list 'a,b,c' or range 'lo:hi:step'");
    cvc->add_option("--contexts", contexts_spec, "comma-separated context sizes");
    auto* cv_seed_opt = cvc->add_option("--shuffle-seed", cv_seed,
                                        "shuffle sentences before the fold split");
    cvc->add_option("--out", cv_csv, "grid CSV output path");
    cvc->add_option("--beta", beta, "F_beta weight");
    cvc->add_option("--retag-rules", copts.retag_rules_path, "word<TAB>tag rules file");

    // curve
    auto* curvec = app.add_subcommand("curve", "learning curve over training prefixes");
    std::string cu_train, cu_test, cu_csv;
    std::string fractions_spec = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
    std::size_t cu_context = 3;
    double cu_threshold = 0.6;
    curvec->add_option("train", cu_train, "training corpus")->required();
    curvec->add_option("test", cu_test, "test corpus")->required();
    curvec->add_option("--fractions", fractions_spec, "comma-separated fractions in (0,1]");
    curvec->add_option("-c,--context", cu_context, "context size");
    curvec->add_option("-t,--tile-threshold", cu_threshold, "theta_T");
    curvec->add_option("--out", cu_csv, "CSV output path (default stdout)");
    curvec->add_option("--beta", beta, "F_beta weight");
    curvec->add_option("--retag-rules", copts.retag_rules_path, "word<TAB>tag rules file");

    // generate
    auto* genc = app.add_subcommand("generate", "write a synthetic bracketed corpus");
    std::string gen_out = "-";
    std::uint64_t gen_seed = 42;
    std::size_t gen_sentences = 1000;
    genc->add_option("output", gen_out, "output path ('-' for stdout)");
    genc->add_option("--seed", gen_seed, "generator seed");
    genc->add_option("-n,--sentences", gen_sentences, "sentence count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*train) return cmd_train(train_corpus, train_out, train_context, copts);
        if (*bracket) {
            cfg.mode = scoring_mode == "linear" ? ScoreMode::Linear
                                                : ScoreMode::Lexicographic;
            return cmd_bracket(br_snapshot, br_input, br_output, cfg,
                               br_ctx->count() > 0, br_jobs, br_dump, copts);
        }
        if (*evalc) return cmd_eval(ev_gold, ev_pred, beta, copts);
        if (*sweepc)
            return cmd_sweep(sw_train, sw_test, thresholds_spec, contexts_spec, sw_csv,
                             beta, copts);
        if (*cvc)
            return cmd_cv(cv_corpus, folds, thresholds_spec, contexts_spec,
                          cv_seed_opt->count() > 0 ? std::optional(cv_seed) : std::nullopt,
                          cv_csv, beta, copts);
        if (*curvec)
            return cmd_curve(cu_train, cu_test, fractions_spec, cu_context, cu_threshold,
                             cu_csv, beta, copts);
        if (*genc) return cmd_generate(gen_out, gen_seed, gen_sentences);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
