#ifndef MBSL_BRACKETER_HPP
#define MBSL_BRACKETER_HPP

#include <iosfwd>
#include <vector>

#include "mbsl/corpus.hpp"
#include "mbsl/scoring.hpp"
#include "mbsl/trie.hpp"

namespace mbsl {

// A candidate span that passed the candidate threshold.
struct ScoredCandidate {
    Span span;
    Score score;
};

// Scores every subsequence of `tags` against the memory and keeps those
// whose score exceeds cfg.candidate_threshold. Pure; safe to call
// concurrently over a shared trie. Throws std::invalid_argument when
// cfg.context exceeds the context the memory was built with.
std::vector<ScoredCandidate> score_all_candidates(const TagSequence& tags,
                                                  const MemoryTrie& trie,
                                                  const ScoreConfig& cfg);

// Greedy selection of a consistent bracketing: accept candidates in
// descending score order, discarding everything that overlaps an accepted
// span. Ties prefer the longer span, then the leftmost, then input order.
BracketedSentence select_candidates(const TagSequence& tags,
                                    std::vector<ScoredCandidate> candidates);

// The full bracketing procedure: score all subsequences, then select.
BracketedSentence bracket_sentence(const TagSequence& tags, const MemoryTrie& trie,
                                   const ScoreConfig& cfg);

// Re-runs scoring for one sentence, writing a per-candidate listing of
// matching tiles (with counts and f_T) and cover statistics.
void dump_candidates(const TagSequence& tags, const MemoryTrie& trie,
                     const ScoreConfig& cfg, const SymbolTable& table,
                     std::ostream& out);

}  // namespace mbsl

#endif  // MBSL_BRACKETER_HPP
