#include "mbsl/bracketer.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace mbsl {

std::vector<ScoredCandidate> score_all_candidates(const TagSequence& tags,
                                                  const MemoryTrie& trie,
                                                  const ScoreConfig& cfg) {
    cfg.validate();
    if (cfg.context > trie.context_limit())
        throw std::invalid_argument(
            "requested context exceeds the context the memory was built with");

    const std::size_t n = tags.size();
    std::size_t max_len = cfg.max_candidate_length == 0 ? n : cfg.max_candidate_length;

    std::vector<ScoredCandidate> kept;
    for (std::size_t start = 0; start < n; ++start) {
        for (std::size_t end = start + 1; end <= n && end - start <= max_len; ++end) {
            Span span{start, end};
            Score score = score_candidate(tags, span, trie, cfg);
            if (score.exceeds(cfg.candidate_threshold))
                kept.push_back(ScoredCandidate{span, score});
        }
    }
    return kept;
}

BracketedSentence select_candidates(const TagSequence& tags,
                                    std::vector<ScoredCandidate> candidates) {
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const ScoredCandidate& ca = candidates[a];
        const ScoredCandidate& cb = candidates[b];
        if (!(ca.score == cb.score)) return cb.score < ca.score;
        if (ca.span.length() != cb.span.length())
            return ca.span.length() > cb.span.length();
        if (ca.span.start != cb.span.start) return ca.span.start < cb.span.start;
        return a < b;
    });

    BracketedSentence out;
    out.tags = tags;
    for (std::size_t idx : order) {
        const Span& span = candidates[idx].span;
        bool clash = false;
        for (const Span& accepted : out.instances)
            if (span.overlaps(accepted)) {
                clash = true;
                break;
            }
        if (!clash) out.instances.push_back(span);
    }
    std::sort(out.instances.begin(), out.instances.end());
    return out;
}

BracketedSentence bracket_sentence(const TagSequence& tags, const MemoryTrie& trie,
                                   const ScoreConfig& cfg) {
    return select_candidates(tags, score_all_candidates(tags, trie, cfg));
}

void dump_candidates(const TagSequence& tags, const MemoryTrie& trie,
                     const ScoreConfig& cfg, const SymbolTable& table,
                     std::ostream& out) {
    cfg.validate();
    const std::size_t n = tags.size();
    for (std::size_t start = 0; start < n; ++start) {
        for (std::size_t end = start + 1; end <= n; ++end) {
            Span span{start, end};
            SituatedCandidate sc = make_situated(tags, span, cfg.context);
            std::vector<Tile> tiles = matching_tiles(sc, trie, cfg.tile_threshold);
            if (tiles.empty()) continue;
            out << "candidate [" << span.start << "," << span.end << ")";
            for (std::size_t i = span.start; i < span.end; ++i)
                out << ' ' << table.name(tags[i]);
            out << '\n';
            for (const Tile& t : tiles) {
                out << "  tile " << t.start << ".." << t.end << " \"";
                for (std::size_t i = t.start; i <= t.end; ++i) {
                    if (i > t.start) out << ' ';
                    out << table.name(sc.symbols[i]);
                }
                out << "\" pos=" << t.counts.positive << " total=" << t.counts.total
                    << " f=" << t.score << '\n';
            }
            auto stats = cover_stats(build_cover_graph(tiles, sc.open_pos, sc.close_pos));
            if (stats)
                out << "  covers num=" << stats->num << " minsize=" << stats->minsize
                    << " maxcontext=" << stats->maxcontext
                    << " maxoverlap=" << stats->maxoverlap << '\n';
            else
                out << "  covers none\n";
        }
    }
}

}  // namespace mbsl
