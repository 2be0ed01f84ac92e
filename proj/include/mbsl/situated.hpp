#ifndef MBSL_SITUATED_HPP
#define MBSL_SITUATED_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "mbsl/corpus.hpp"
#include "mbsl/symbol.hpp"

namespace mbsl {

// A candidate span embedded in its surrounding tags: up to `context` tags of
// left context, an open bracket, the candidate tags, a close bracket, and up
// to `context` tags of right context. Contexts are truncated at sentence
// boundaries; no padding symbols are introduced.
struct SituatedCandidate {
    std::vector<Symbol> symbols;
    std::size_t open_pos = 0;   // index of '[' in symbols
    std::size_t close_pos = 0;  // index of ']' in symbols
    Span span;                  // candidate span within the source sentence

    std::size_t size() const { return symbols.size(); }
    std::size_t candidate_length() const { return close_pos - open_pos - 1; }
    std::size_t left_context() const { return open_pos; }
    std::size_t right_context() const { return symbols.size() - close_pos - 1; }

    // A situated-candidate position is context iff it lies outside
    // [open_pos, close_pos].
    bool is_context(std::size_t pos) const {
        return pos < open_pos || pos > close_pos;
    }
};

// Builds the situated form of `span` within `tags`. Throws
// std::invalid_argument for an empty or out-of-bounds span or context < 1.
SituatedCandidate make_situated(const TagSequence& tags, Span span,
                                std::size_t context);

// All tile slices of a situated candidate: contiguous [start, end] index
// ranges (inclusive) containing at least one bracket and at least one tag.
// Ordered by start position, then end. For full contexts on both sides the
// count is 2*cn*(l+2) + 2*l + cn*cn + 1.
std::vector<std::pair<std::size_t, std::size_t>> tile_slices(
    const SituatedCandidate& sc);

// Smallest end such that [start, end] is a valid tile slice, or sc.size()
// when no slice starting at `start` qualifies. Slice validity is
// upward-closed in `end`.
std::size_t first_tile_end(const SituatedCandidate& sc, std::size_t start);

}  // namespace mbsl

#endif  // MBSL_SITUATED_HPP
