#include "mbsl/scoring.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace mbsl {

namespace {

constexpr std::uint64_t kCountMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kCountMax - b ? kCountMax : a + b;
}

}  // namespace

void ScoreConfig::validate() const {
    if (context < 1) throw std::invalid_argument("context size must be >= 1");
    if (!(tile_threshold > 0.0 && tile_threshold < 1.0))
        throw std::invalid_argument("tile threshold must lie in (0, 1)");
    if (weights.alpha < 0 || weights.beta < 0 || weights.gamma < 0 || weights.delta < 0)
        throw std::invalid_argument("linear weights must be non-negative");
}

std::vector<Tile> matching_tiles(const SituatedCandidate& sc, const MemoryTrie& trie,
                                 double tile_threshold) {
    std::vector<Tile> out;
    const std::size_t n = sc.symbols.size();
    for (std::size_t start = 0; start < n; ++start) {
        std::size_t first_end = first_tile_end(sc, start);
        if (first_end >= n) continue;
        TrieCursor cursor = trie.root_cursor();
        for (std::size_t j = start; j < n; ++j) {
            cursor = cursor.advance(sc.symbols[j]);
            if (!cursor.valid()) break;  // longer slices share this prefix
            if (j < first_end) continue;
            TileCounts counts = cursor.counts();
            if (counts.positive == 0) continue;
            double f = tile_score(counts);
            if (f > tile_threshold) out.push_back(Tile{start, j, counts, f});
        }
    }
    return out;
}

bool connects(const Tile& t1, const Tile& t2) {
    return t2.start > t1.start && t2.start <= t1.end + 1 && t2.end > t1.end;
}

std::size_t tile_overlap(const Tile& t1, const Tile& t2) {
    return t1.end >= t2.start ? t1.end - t2.start + 1 : 0;
}

CoverGraph build_cover_graph(std::vector<Tile> tiles, std::size_t open_pos,
                             std::size_t close_pos) {
    CoverGraph g;
    g.open_pos = open_pos;
    g.close_pos = close_pos;
    g.tiles = std::move(tiles);
    std::sort(g.tiles.begin(), g.tiles.end(), [](const Tile& a, const Tile& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
    });

    const std::size_t n = g.tiles.size();
    g.arcs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // connects() requires a strictly later start, so only tiles after i
        // in (start, end) order are candidates.
        for (std::size_t j = i + 1; j < n; ++j)
            if (connects(g.tiles[i], g.tiles[j])) g.arcs[i].push_back(j);
        if (g.tiles[i].contains(open_pos)) g.start_tiles.push_back(i);
        if (g.tiles[i].contains(close_pos)) g.end_tiles.push_back(i);
    }
    return g;
}

std::optional<CoverStats> cover_stats(const CoverGraph& g) {
    const std::size_t n = g.tiles.size();
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : g.arcs[i])
            if (j <= i || j >= n)
                throw std::invalid_argument("cover graph arcs must point forward");

    // Per tile, over all START->tile path prefixes: path count, fewest
    // tiles, largest left-context reach, largest accumulated overlap.
    std::vector<std::uint64_t> ways(n, 0);
    std::vector<std::size_t> fewest(n, kUnset);
    std::vector<std::size_t> best_left(n, kUnset);
    std::vector<std::size_t> best_overlap(n, kUnset);

    for (std::size_t i : g.start_tiles) {
        ways[i] = 1;
        fewest[i] = 1;
        best_left[i] = g.open_pos - g.tiles[i].start;
        best_overlap[i] = 0;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (ways[i] == 0) continue;  // not reachable from START
        for (std::size_t j : g.arcs[i]) {
            ways[j] = sat_add(ways[j], ways[i]);
            fewest[j] = std::min(fewest[j], fewest[i] + 1);
            best_left[j] = best_left[j] == kUnset ? best_left[i]
                                                  : std::max(best_left[j], best_left[i]);
            std::size_t ov = best_overlap[i] + tile_overlap(g.tiles[i], g.tiles[j]);
            best_overlap[j] = best_overlap[j] == kUnset ? ov : std::max(best_overlap[j], ov);
        }
    }

    CoverStats stats;
    bool any = false;
    for (std::size_t i : g.end_tiles) {
        if (ways[i] == 0) continue;
        // Tiles along a cover have strictly increasing starts and ends with
        // no gaps, so the cover's footprint is one interval reaching
        // best_left positions before the open bracket and end - close_pos
        // positions after the close bracket; that is its covered context.
        std::size_t right = g.tiles[i].end - g.close_pos;
        any = true;
        stats.num = sat_add(stats.num, ways[i]);
        stats.minsize = stats.minsize == 0 ? fewest[i] : std::min(stats.minsize, fewest[i]);
        stats.maxcontext = std::max(stats.maxcontext, best_left[i] + right);
        stats.maxoverlap = std::max(stats.maxoverlap, best_overlap[i]);
    }
    if (!any) return std::nullopt;
    return stats;
}

Score Score::from_stats(const CoverStats& stats, const ScoreConfig& cfg) {
    Score s;
    s.has_cover_ = true;
    s.mode_ = cfg.mode;
    s.stats_ = stats;
    const LinearWeights& w = cfg.weights;
    s.linear_ = w.alpha * static_cast<double>(stats.num) -
                w.beta * static_cast<double>(stats.minsize) +
                w.gamma * static_cast<double>(stats.maxcontext) +
                w.delta * static_cast<double>(stats.maxoverlap);
    return s;
}

bool Score::exceeds(double candidate_threshold) const {
    if (!has_cover_) return false;
    if (mode_ == ScoreMode::Lexicographic)
        return static_cast<double>(stats_.num) > candidate_threshold;
    return linear_ > candidate_threshold;
}

bool operator<(const Score& a, const Score& b) {
    if (a.has_cover_ != b.has_cover_) return !a.has_cover_;
    if (!a.has_cover_) return false;
    if (a.mode_ == ScoreMode::Linear) return a.linear_ < b.linear_;
    // minsize is preferred smaller, the rest larger.
    auto key = [](const Score& s) {
        return std::tuple(s.stats_.num,
                          std::numeric_limits<std::size_t>::max() - s.stats_.minsize,
                          s.stats_.maxcontext, s.stats_.maxoverlap);
    };
    return key(a) < key(b);
}

bool operator==(const Score& a, const Score& b) {
    if (a.has_cover_ != b.has_cover_) return false;
    if (!a.has_cover_) return true;
    if (a.mode_ == ScoreMode::Linear) return a.linear_ == b.linear_;
    return a.stats_ == b.stats_;
}

Score candidate_score(const std::optional<CoverStats>& stats, const ScoreConfig& cfg) {
    if (!stats) return Score();
    return Score::from_stats(*stats, cfg);
}

Score score_candidate(const TagSequence& tags, Span span, const MemoryTrie& trie,
                      const ScoreConfig& cfg) {
    SituatedCandidate sc = make_situated(tags, span, cfg.context);
    std::vector<Tile> tiles = matching_tiles(sc, trie, cfg.tile_threshold);
    CoverGraph g = build_cover_graph(std::move(tiles), sc.open_pos, sc.close_pos);
    return candidate_score(cover_stats(g), cfg);
}

}  // namespace mbsl
