#ifndef MBSL_SCORING_HPP
#define MBSL_SCORING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mbsl/situated.hpp"
#include "mbsl/trie.hpp"

namespace mbsl {

// A tile slice of a situated candidate together with its memory counts and
// score f_T = positive/total.
struct Tile {
    std::size_t start = 0;  // inclusive positions within the situated candidate
    std::size_t end = 0;
    TileCounts counts;
    double score = 0.0;

    std::size_t length() const { return end - start + 1; }
    bool contains(std::size_t pos) const { return pos >= start && pos <= end; }
};

enum class ScoreMode { Lexicographic, Linear };

// Weights of the linear candidate score
// f_C = alpha*num - beta*minsize + gamma*maxcontext + delta*maxoverlap.
struct LinearWeights {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double delta = 1.0;
};

struct ScoreConfig {
    std::size_t context = 3;          // cn, max context tags per side
    double tile_threshold = 0.6;      // theta_T; a tile matches iff f_T > theta_T
    double candidate_threshold = 0.0; // theta_C
    ScoreMode mode = ScoreMode::Lexicographic;
    LinearWeights weights;
    // Candidates longer than this are not considered; 0 means uncapped.
    std::size_t max_candidate_length = 0;

    void validate() const;  // throws std::invalid_argument
};

// Aggregate statistics over all covers of a candidate.
struct CoverStats {
    std::uint64_t num = 0;        // number of distinct covers (saturating)
    std::size_t minsize = 0;      // fewest tiles in any cover
    std::size_t maxcontext = 0;   // most distinct context positions covered
    std::size_t maxoverlap = 0;   // largest summed overlap of consecutive tiles

    friend bool operator==(const CoverStats&, const CoverStats&) = default;
};

// The DAG whose START-to-END paths are exactly the covers of a candidate.
// Tiles are kept sorted by (start, end); arcs always point forward in that
// order, so the tile order is already topological.
struct CoverGraph {
    std::vector<Tile> tiles;
    std::vector<std::vector<std::size_t>> arcs;  // arcs[i]: successors of tile i
    std::vector<std::size_t> start_tiles;        // tiles containing the open bracket
    std::vector<std::size_t> end_tiles;          // tiles containing the close bracket
    std::size_t open_pos = 0;
    std::size_t close_pos = 0;
};

// Candidate score; ordered. Without covers the score is zero and never
// exceeds any threshold. In lexicographic mode candidates compare by
// (num, -minsize, maxcontext, maxoverlap); in linear mode by f_C.
class Score {
public:
    Score() = default;  // no cover

    static Score from_stats(const CoverStats& stats, const ScoreConfig& cfg);

    bool has_cover() const { return has_cover_; }
    const CoverStats* stats() const { return has_cover_ ? &stats_ : nullptr; }

    // Linear f_C; zero when there is no cover.
    double linear_value() const { return has_cover_ ? linear_ : 0.0; }

    // Whether this candidate passes theta_C. A cover-less candidate never
    // does. In lexicographic mode the first key, num, is compared.
    bool exceeds(double candidate_threshold) const;

    friend bool operator<(const Score& a, const Score& b);
    friend bool operator==(const Score& a, const Score& b);

private:
    bool has_cover_ = false;
    ScoreMode mode_ = ScoreMode::Lexicographic;
    CoverStats stats_;
    double linear_ = 0.0;
};

// All tile slices of `sc` whose memory score strictly exceeds the
// threshold. Slices sharing a start position are looked up with one
// incremental cursor walk. Tiles absent from the memory have no positive
// evidence and never match.
std::vector<Tile> matching_tiles(const SituatedCandidate& sc, const MemoryTrie& trie,
                                 double tile_threshold);

// Tile adjacency: t2 starts after t1, with no gap and no inclusion.
bool connects(const Tile& t1, const Tile& t2);

// Number of positions shared by two connecting tiles.
std::size_t tile_overlap(const Tile& t1, const Tile& t2);

CoverGraph build_cover_graph(std::vector<Tile> tiles, std::size_t open_pos,
                             std::size_t close_pos);

// Cover statistics by dynamic programming in topological order, or nullopt
// when no cover exists. Throws std::invalid_argument on a graph whose arcs
// do not all point forward (cannot arise from build_cover_graph).
std::optional<CoverStats> cover_stats(const CoverGraph& g);

Score candidate_score(const std::optional<CoverStats>& stats, const ScoreConfig& cfg);

// Convenience composition: situate, match, cover, score.
Score score_candidate(const TagSequence& tags, Span span, const MemoryTrie& trie,
                      const ScoreConfig& cfg);

}  // namespace mbsl

#endif  // MBSL_SCORING_HPP
