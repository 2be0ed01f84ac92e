#include "mbsl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "mbsl/errors.hpp"
#include "mbsl/trie.hpp"

namespace mbsl {

namespace {

std::vector<BracketedSentence> bracket_corpus(const Corpus& test, const MemoryTrie& trie,
                                              const ScoreConfig& cfg) {
    std::vector<BracketedSentence> out;
    out.reserve(test.size());
    for (const BracketedSentence& s : test.sentences())
        out.push_back(bracket_sentence(s.tags, trie, cfg));
    return out;
}

Corpus subset(const Corpus& corpus, std::span<const std::size_t> indices) {
    std::vector<BracketedSentence> sentences;
    sentences.reserve(indices.size());
    for (std::size_t i : indices) sentences.push_back(corpus.sentence(i));
    return Corpus(corpus.symbols_ptr(), std::move(sentences));
}

ScoreConfig with_params(ScoreConfig cfg, std::size_t context, double threshold) {
    cfg.context = context;
    cfg.tile_threshold = threshold;
    return cfg;
}

}  // namespace

double f_beta_measure(double precision, double recall, double beta) {
    if (precision == recall) return precision;  // (b^2+1)P^2 / ((b^2+1)P) = P
    double b2 = beta * beta;
    double denom = b2 * precision + recall;
    if (denom == 0.0) return 0.0;
    return (b2 + 1.0) * precision * recall / denom;
}

EvalReport evaluate(const Corpus& gold, std::span<const BracketedSentence> predicted,
                    double beta) {
    if (gold.size() != predicted.size())
        throw DataError("gold and predicted corpora differ in sentence count");

    EvalReport report;
    report.beta = beta;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const BracketedSentence& g = gold.sentence(i);
        const BracketedSentence& p = predicted[i];
        if (g.tags != p.tags)
            throw DataError("gold and predicted tags differ at sentence " +
                            std::to_string(i + 1));

        report.gold_count += g.instances.size();
        report.predicted_count += p.instances.size();
        for (const Span& s : g.instances) ++report.by_length[s.length()].gold;
        for (const Span& s : p.instances) ++report.by_length[s.length()].predicted;

        // Both span lists are sorted and non-overlapping.
        auto gi = g.instances.begin();
        auto pi = p.instances.begin();
        while (gi != g.instances.end() && pi != p.instances.end()) {
            if (*gi == *pi) {
                ++report.true_positives;
                ++report.by_length[gi->length()].correct;
                ++gi;
                ++pi;
            } else if (*gi < *pi) {
                ++gi;
            } else {
                ++pi;
            }
        }
    }

    report.recall = report.gold_count == 0
                        ? 0.0
                        : static_cast<double>(report.true_positives) /
                              static_cast<double>(report.gold_count);
    report.precision = report.predicted_count == 0
                           ? 0.0
                           : static_cast<double>(report.true_positives) /
                                 static_cast<double>(report.predicted_count);
    report.f_beta = f_beta_measure(report.precision, report.recall, beta);
    return report;
}

std::vector<SweepPoint> sweep(const Corpus& train, const Corpus& test,
                              std::span<const double> thresholds,
                              std::span<const std::size_t> contexts,
                              const SweepOptions& options) {
    std::vector<SweepPoint> points;
    for (std::size_t context : contexts) {
        MemoryTrie trie = build_memory(train, context);
        for (double threshold : thresholds) {
            ScoreConfig cfg = with_params(options.base, context, threshold);
            EvalReport report =
                evaluate(test, bracket_corpus(test, trie, cfg), options.beta);
            points.push_back(SweepPoint{context, threshold, report.recall,
                                        report.precision, report.f_beta,
                                        report.true_positives, report.gold_count,
                                        report.predicted_count});
        }
    }
    return points;
}

const SweepPoint* breakeven_point(std::span<const SweepPoint> points,
                                  std::optional<std::size_t> context) {
    const SweepPoint* best = nullptr;
    for (const SweepPoint& p : points) {
        if (context && p.context != *context) continue;
        if (!best ||
            std::abs(p.recall - p.precision) < std::abs(best->recall - best->precision))
            best = &p;
    }
    return best;
}

void write_sweep_csv(std::span<const SweepPoint> points, std::ostream& out) {
    out << "cn,theta_t,recall,precision,f_beta,tp,gold,predicted\n";
    char buf[160];
    for (const SweepPoint& p : points) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6g,%.6f,%.6f,%.6f,", p.context,
                      p.tile_threshold, p.recall, p.precision, p.f_beta);
        out << buf << p.true_positives << ',' << p.gold_count << ','
            << p.predicted_count << '\n';
    }
}

CrossValidation cross_validate(const Corpus& corpus, std::size_t folds,
                               std::span<const double> thresholds,
                               std::span<const std::size_t> contexts,
                               const CrossValidationOptions& options) {
    if (folds < 2) throw std::invalid_argument("cross-validation needs at least 2 folds");
    if (corpus.size() < folds)
        throw DataError("corpus has fewer sentences than folds");
    if (thresholds.empty() || contexts.empty())
        throw std::invalid_argument("empty parameter grid");

    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (options.shuffle_seed) {
        // Hand-rolled Fisher-Yates: std::shuffle is not reproducible across
        // standard libraries.
        std::mt19937_64 rng(*options.shuffle_seed);
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng() % i]);
    }

    auto fold_begin = [&](std::size_t f) { return f * corpus.size() / folds; };

    // reports[ci][ti][fold]
    std::vector<std::vector<std::vector<EvalReport>>> reports(
        contexts.size(),
        std::vector<std::vector<EvalReport>>(thresholds.size()));

    for (std::size_t ci = 0; ci < contexts.size(); ++ci) {
        for (std::size_t f = 0; f < folds; ++f) {
            std::size_t lo = fold_begin(f), hi = fold_begin(f + 1);
            std::vector<std::size_t> train_idx, test_idx;
            for (std::size_t i = 0; i < order.size(); ++i)
                (i >= lo && i < hi ? test_idx : train_idx).push_back(order[i]);
            Corpus train = subset(corpus, train_idx);
            Corpus test = subset(corpus, test_idx);
            MemoryTrie trie = build_memory(train, contexts[ci]);
            for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
                ScoreConfig cfg = with_params(options.base, contexts[ci], thresholds[ti]);
                reports[ci][ti].push_back(
                    evaluate(test, bracket_corpus(test, trie, cfg), options.beta));
            }
        }
    }

    CrossValidation result;
    bool have_best = false;
    std::size_t best_ci = 0, best_ti = 0;
    for (std::size_t ci = 0; ci < contexts.size(); ++ci) {
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
            double sum = 0.0;
            for (const EvalReport& r : reports[ci][ti]) sum += r.f_beta;
            double mean = sum / static_cast<double>(folds);
            result.grid.push_back({contexts[ci], thresholds[ti], mean});
            // Ties: smaller context, then larger threshold.
            bool better = !have_best || mean > result.best_mean_f ||
                          (mean == result.best_mean_f &&
                           (contexts[ci] < contexts[best_ci] ||
                            (contexts[ci] == contexts[best_ci] &&
                             thresholds[ti] > thresholds[best_ti])));
            if (better) {
                have_best = true;
                best_ci = ci;
                best_ti = ti;
                result.best_mean_f = mean;
            }
        }
    }
    result.best_context = contexts[best_ci];
    result.best_threshold = thresholds[best_ti];
    result.fold_reports = reports[best_ci][best_ti];
    return result;
}

std::vector<CurvePoint> learning_curve(const Corpus& train, const Corpus& test,
                                       std::span<const double> fractions,
                                       const CurveOptions& options) {
    std::vector<CurvePoint> points;
    for (double fraction : fractions) {
        if (!(fraction > 0.0 && fraction <= 1.0))
            throw std::invalid_argument("fractions must lie in (0, 1]");
        auto want = static_cast<std::size_t>(
            std::llround(fraction * static_cast<double>(train.size())));
        std::size_t count = std::clamp<std::size_t>(want, 1, train.size());
        std::vector<std::size_t> idx(count);
        for (std::size_t i = 0; i < count; ++i) idx[i] = i;
        Corpus prefix = subset(train, idx);

        MemoryTrie trie = build_memory(prefix, options.config.context);
        EvalReport report = evaluate(
            test, bracket_corpus(test, trie, options.config), options.beta);
        points.push_back(CurvePoint{fraction, prefix.size(), prefix.instance_count(),
                                    prefix.word_count(), report.recall,
                                    report.precision, report.f_beta});
    }
    return points;
}

void write_curve_csv(std::span<const CurvePoint> points, std::ostream& out) {
    out << "fraction,sentences,examples,words,recall,precision,f_beta\n";
    char buf[200];
    for (const CurvePoint& p : points) {
        std::snprintf(buf, sizeof(buf), "%.6g,%zu,%zu,%zu,%.6f,%.6f,%.6f\n", p.fraction,
                      p.sentences, p.examples, p.words, p.recall, p.precision, p.f_beta);
        out << buf;
    }
}

Corpus generate_synthetic(std::uint64_t seed, std::size_t sentence_count,
                          SymbolTable& table) {
    Symbol dt = table.intern("DT");
    Symbol adj = table.intern("ADJ");
    Symbol nn = table.intern("NN");
    const Symbol filler[4] = {table.intern("VB"), table.intern("PP"),
                              table.intern("RB"), table.intern(".")};

    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    std::vector<BracketedSentence> sentences;
    sentences.reserve(sentence_count);
    for (std::size_t k = 0; k < sentence_count; ++k) {
        BracketedSentence s;
        auto emit_filler = [&](std::size_t lo, std::size_t hi) {
            std::size_t len = lo + pick(hi - lo + 1);
            for (std::size_t i = 0; i < len; ++i) s.tags.push_back(filler[pick(4)]);
        };

        std::size_t instances = 1 + pick(3);
        emit_filler(0, 2);
        for (std::size_t i = 0; i < instances; ++i) {
            // At least one filler tag between instances keeps each instance
            // a maximal pattern run.
            if (i > 0) emit_filler(1, 3);
            std::size_t start = s.tags.size();
            if (pick(2) == 0) s.tags.push_back(dt);
            for (std::size_t a = pick(3); a > 0; --a) s.tags.push_back(adj);
            s.tags.push_back(nn);
            if (pick(2) == 0) s.tags.push_back(nn);
            s.instances.push_back(Span{start, s.tags.size()});
        }
        emit_filler(0, 2);
        sentences.push_back(std::move(s));
    }
    return Corpus(&table, std::move(sentences));
}

}  // namespace mbsl
