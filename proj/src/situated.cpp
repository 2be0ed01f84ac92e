#include "mbsl/situated.hpp"

#include <stdexcept>

namespace mbsl {

SituatedCandidate make_situated(const TagSequence& tags, Span span,
                                std::size_t context) {
    if (context < 1) throw std::invalid_argument("context size must be >= 1");
    if (span.start >= span.end) throw std::invalid_argument("empty candidate span");
    if (span.end > tags.size()) throw std::invalid_argument("candidate span out of bounds");

    std::size_t left_begin = span.start >= context ? span.start - context : 0;
    std::size_t right_end = std::min(span.end + context, tags.size());

    SituatedCandidate sc;
    sc.span = span;
    sc.symbols.reserve(right_end - left_begin + 2);
    for (std::size_t i = left_begin; i < span.start; ++i) sc.symbols.push_back(tags[i]);
    sc.open_pos = sc.symbols.size();
    sc.symbols.push_back(Symbol::open_bracket());
    for (std::size_t i = span.start; i < span.end; ++i) sc.symbols.push_back(tags[i]);
    sc.close_pos = sc.symbols.size();
    sc.symbols.push_back(Symbol::close_bracket());
    for (std::size_t i = span.end; i < right_end; ++i) sc.symbols.push_back(tags[i]);
    return sc;
}

std::size_t first_tile_end(const SituatedCandidate& sc, std::size_t start) {
    const std::size_t n = sc.symbols.size();
    const std::size_t ob = sc.open_pos;
    const std::size_t cb = sc.close_pos;

    // Earliest end that gives the slice both a bracket and a tag. Starting
    // on a bracket, the first tag lies one past it; otherwise the nearest
    // bracket at or after `start` completes the slice. Starts past the
    // close bracket see no bracket at all.
    std::size_t end;
    if (start < ob)
        end = ob;
    else if (start == ob)
        end = ob + 1;  // instance is non-empty
    else if (start < cb)
        end = cb;
    else if (start == cb)
        end = cb + 1;  // needs a right-context tag
    else
        return n;
    return end < n ? end : n;
}

std::vector<std::pair<std::size_t, std::size_t>> tile_slices(
    const SituatedCandidate& sc) {
    const std::size_t n = sc.symbols.size();
    std::vector<std::pair<std::size_t, std::size_t>> slices;
    for (std::size_t start = 0; start < n; ++start) {
        for (std::size_t end = first_tile_end(sc, start); end < n; ++end)
            slices.emplace_back(start, end);
    }
    return slices;
}

}  // namespace mbsl
