#ifndef MBSL_EVAL_HPP
#define MBSL_EVAL_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mbsl/bracketer.hpp"
#include "mbsl/corpus.hpp"
#include "mbsl/scoring.hpp"

namespace mbsl {

// F_beta = (beta^2+1)*P*R / (beta^2*P + R); 0 when P and R are both 0 and
// exactly P when P equals R.
double f_beta_measure(double precision, double recall, double beta = 1.0);

// Complete-pattern scores: a predicted span counts iff it matches a gold
// span at both endpoints.
struct EvalReport {
    std::uint64_t true_positives = 0;
    std::uint64_t gold_count = 0;
    std::uint64_t predicted_count = 0;
    double recall = 0.0;
    double precision = 0.0;
    double f_beta = 0.0;
    double beta = 1.0;

    struct LengthBin {
        std::uint64_t gold = 0;
        std::uint64_t predicted = 0;
        std::uint64_t correct = 0;
    };
    std::map<std::size_t, LengthBin> by_length;
};

// Throws DataError when sentence counts or tag sequences disagree.
EvalReport evaluate(const Corpus& gold, std::span<const BracketedSentence> predicted,
                    double beta = 1.0);

struct SweepPoint {
    std::size_t context = 0;
    double tile_threshold = 0.0;
    double recall = 0.0;
    double precision = 0.0;
    double f_beta = 0.0;
    std::uint64_t true_positives = 0;
    std::uint64_t gold_count = 0;
    std::uint64_t predicted_count = 0;
};

struct SweepOptions {
    double beta = 1.0;
    ScoreConfig base;  // context and tile_threshold are overridden per point
};

// One point per (context, threshold); the memory is built once per context
// and reused across thresholds.
std::vector<SweepPoint> sweep(const Corpus& train, const Corpus& test,
                              std::span<const double> thresholds,
                              std::span<const std::size_t> contexts,
                              const SweepOptions& options = SweepOptions());

// The sweep point where recall and precision come closest; among the given
// points, restricted to one context when `context` is set.
const SweepPoint* breakeven_point(std::span<const SweepPoint> points,
                                  std::optional<std::size_t> context = std::nullopt);

void write_sweep_csv(std::span<const SweepPoint> points, std::ostream& out);

struct CrossValidationOptions {
    double beta = 1.0;
    ScoreConfig base;
    // When set, sentences are shuffled (deterministically by this seed)
    // before the contiguous fold split.
    std::optional<std::uint64_t> shuffle_seed;
};

struct CrossValidation {
    std::size_t best_context = 0;
    double best_threshold = 0.0;
    double best_mean_f = 0.0;
    // Mean F per grid point, in (context, threshold) order.
    struct GridPoint {
        std::size_t context;
        double tile_threshold;
        double mean_f;
    };
    std::vector<GridPoint> grid;
    // Per-fold reports at the winning parameters.
    std::vector<EvalReport> fold_reports;
};

// Deterministic contiguous-block k-fold cross-validation over the grid.
// Ties on mean F go to the smaller context, then the larger threshold.
// Throws DataError when the corpus has fewer sentences than folds.
CrossValidation cross_validate(const Corpus& corpus, std::size_t folds,
                               std::span<const double> thresholds,
                               std::span<const std::size_t> contexts,
                               const CrossValidationOptions& options =
                                   CrossValidationOptions());

struct CurvePoint {
    double fraction = 0.0;
    std::size_t sentences = 0;
    std::size_t examples = 0;  // pattern instances in the prefix
    std::size_t words = 0;
    double recall = 0.0;
    double precision = 0.0;
    double f_beta = 0.0;
};

struct CurveOptions {
    double beta = 1.0;
    ScoreConfig config;
};

// Trains on growing prefixes of `train` (by sentence) and evaluates each on
// `test`. Fractions must lie in (0, 1].
std::vector<CurvePoint> learning_curve(const Corpus& train, const Corpus& test,
                                       std::span<const double> fractions,
                                       const CurveOptions& options = CurveOptions());

void write_curve_csv(std::span<const CurvePoint> points, std::ostream& out);

// Deterministic pseudo-random corpus for end-to-end testing: target
// instances are exactly the maximal runs matching DT? ADJ* NN NN?,
// separated by filler from {VB, PP, RB, .}. Identical seeds produce
// identical corpora on every platform.
Corpus generate_synthetic(std::uint64_t seed, std::size_t sentence_count,
                          SymbolTable& table);

}  // namespace mbsl

#endif  // MBSL_EVAL_HPP
