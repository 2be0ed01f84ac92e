#ifndef MBSL_TRIE_HPP
#define MBSL_TRIE_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mbsl/corpus.hpp"
#include "mbsl/situated.hpp"
#include "mbsl/symbol.hpp"

namespace mbsl {

// Occurrence counts of one tile. `positive` counts occurrences in training
// with corresponding brackets; `total` counts every occurrence of the
// tile's bare tag sequence, so total - positive is the negative count.
struct TileCounts {
    std::uint64_t positive = 0;
    std::uint64_t total = 0;

    friend bool operator==(const TileCounts&, const TileCounts&) = default;
};

inline double tile_score(const TileCounts& c) {
    return c.total == 0 ? 0.0 : static_cast<double>(c.positive) / static_cast<double>(c.total);
}

class MemoryTrie;

// One trie node; a node exists iff its root path spells an inserted tile or
// a prefix of one. Children are ordered by symbol id.
struct TrieNode {
    std::map<Symbol, std::unique_ptr<TrieNode>> children;
    std::uint64_t positive = 0;
    std::uint64_t total = 0;
};

// Lightweight handle for incremental descent. Advancing past a missing
// child yields the absent cursor, which stays absent.
class TrieCursor {
public:
    TrieCursor() : node_(nullptr) {}

    bool valid() const { return node_ != nullptr; }
    TrieCursor advance(Symbol s) const;
    TileCounts counts() const;  // requires valid()

private:
    friend class MemoryTrie;
    explicit TrieCursor(const TrieNode* node) : node_(node) {}
    const TrieNode* node_;
};

inline TrieCursor cursor_advance(TrieCursor cursor, Symbol s) {
    return cursor.advance(s);
}

// All tiles of the situated form of one training instance: every contiguous
// slice, with up to `context` tags on each side, that contains at least one
// bracket and one tag. Contexts never include other instances' brackets,
// only the neighboring tags themselves.
std::vector<std::vector<Symbol>> enumerate_instance_tiles(
    const BracketedSentence& sentence, Span instance, std::size_t context);

// The training memory: a trie over tags and bracket markers built in two
// passes. Pass one inserts every tile of every target instance and
// accumulates positive counts; pass two walks every contiguous tag
// subsequence of every sentence through the trie, crossing bracket arcs
// without consuming input, and accumulates total counts. Immutable after
// the build; safe for concurrent readers.
class MemoryTrie {
public:
    std::size_t context_limit() const { return context_; }
    std::size_t sentence_count() const { return sentence_count_; }
    std::uint64_t tile_insertions() const { return tile_insertions_; }
    std::size_t node_count() const { return node_count_; }

    // Counts stored at the node spelling `tile`, or nullopt if no such node
    // exists (no positive evidence). The empty sequence is not a tile.
    std::optional<TileCounts> lookup(std::span<const Symbol> tile) const;

    TrieCursor root_cursor() const;

    // Preorder walk over all non-root nodes, children in symbol-id order.
    void for_each_node(
        const std::function<void(const std::vector<Symbol>&, const TileCounts&)>& fn) const;

    // Versioned binary snapshot; round-trips exactly.
    void save_snapshot(std::ostream& out, const SymbolTable& table) const;
    static MemoryTrie load_snapshot(std::istream& in, SymbolTable& table);

    friend MemoryTrie build_memory(const Corpus& corpus, std::size_t context);

private:
    MemoryTrie() = default;

    std::shared_ptr<TrieNode> root_;
    std::size_t context_ = 0;
    std::size_t sentence_count_ = 0;
    std::uint64_t tile_insertions_ = 0;
    std::size_t node_count_ = 0;
};

// Builds the memory from a bracketed corpus. Throws std::invalid_argument
// if context < 1 and DataError on an empty corpus.
MemoryTrie build_memory(const Corpus& corpus, std::size_t context);

}  // namespace mbsl

#endif  // MBSL_TRIE_HPP
