#include "mbsl/trie.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "mbsl/errors.hpp"

namespace mbsl {

namespace {

constexpr std::uint64_t kCountMax = std::numeric_limits<std::uint64_t>::max();

void sat_inc(std::uint64_t& x) {
    if (x != kCountMax) ++x;
}

using Node = TrieNode;

Node* child_or_create(Node* node, Symbol s) {
    auto& slot = node->children[s];
    if (!slot) slot = std::make_unique<Node>();
    return slot.get();
}

// Pass one, one instance: walk down from the root once per slice start,
// creating nodes as needed and bumping the positive count at every node
// that completes a valid tile.
void insert_instance_tiles(Node* root, const SituatedCandidate& sc,
                           std::uint64_t& tile_insertions) {
    const std::size_t n = sc.symbols.size();
    for (std::size_t start = 0; start < n; ++start) {
        std::size_t first_end = first_tile_end(sc, start);
        if (first_end >= n) continue;
        Node* node = root;
        for (std::size_t j = start; j < n; ++j) {
            node = child_or_create(node, sc.symbols[j]);
            if (j >= first_end) {
                sat_inc(node->positive);
                sat_inc(tile_insertions);
            }
        }
    }
}

// Pass two, one subsequence start: descend the trie consuming tags[next...]
// along tag arcs while crossing bracket arcs freely. A node reached after
// consuming c tags spells, brackets stripped, the subsequence
// tags[start, start+c); it gets one total-count increment per start
// position, i.e. per occurrence. Nodes that consumed nothing (pure bracket
// prefixes) spell the empty sequence and are skipped.
void accumulate_totals(Node* node, std::span<const Symbol> tags,
                       std::size_t start, std::size_t next) {
    for (auto& [sym, child] : node->children) {
        if (sym.is_bracket()) {
            if (next > start) sat_inc(child->total);
            accumulate_totals(child.get(), tags, start, next);
        } else if (next < tags.size() && sym == tags[next]) {
            sat_inc(child->total);
            accumulate_totals(child.get(), tags, start, next + 1);
        }
    }
}

std::size_t count_nodes(const Node* node) {
    std::size_t n = 0;
    for (const auto& [sym, child] : node->children) n += 1 + count_nodes(child.get());
    return n;
}

void put_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint32_t get_u32(std::istream& in) {
    char buf[4];
    if (!in.read(buf, 4)) throw DataError("truncated snapshot");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    char buf[8];
    if (!in.read(buf, 8)) throw DataError("truncated snapshot");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

void save_node(std::ostream& out, const Node* node) {
    put_u64(out, node->positive);
    put_u64(out, node->total);
    put_u32(out, static_cast<std::uint32_t>(node->children.size()));
    for (const auto& [sym, child] : node->children) {
        put_u32(out, sym.id());
        save_node(out, child.get());
    }
}

void load_node(std::istream& in, Node* node, std::uint32_t symbol_limit,
               std::size_t& nodes_seen) {
    node->positive = get_u64(in);
    node->total = get_u64(in);
    std::uint32_t nchildren = get_u32(in);
    std::uint32_t prev_id = 0;
    bool first = true;
    for (std::uint32_t i = 0; i < nchildren; ++i) {
        std::uint32_t id = get_u32(in);
        if (id >= symbol_limit) throw DataError("snapshot references an unknown symbol");
        if (!first && id <= prev_id) throw DataError("snapshot children out of order");
        first = false;
        prev_id = id;
        auto child = std::make_unique<Node>();
        ++nodes_seen;
        load_node(in, child.get(), symbol_limit, nodes_seen);
        node->children.emplace(Symbol::from_id(id), std::move(child));
    }
}

constexpr char kMagic[4] = {'M', 'B', 'S', 'L'};
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

TrieCursor TrieCursor::advance(Symbol s) const {
    if (!node_) return TrieCursor();
    auto it = node_->children.find(s);
    if (it == node_->children.end()) return TrieCursor();
    return TrieCursor(it->second.get());
}

TileCounts TrieCursor::counts() const {
    return TileCounts{node_->positive, node_->total};
}

std::vector<std::vector<Symbol>> enumerate_instance_tiles(
    const BracketedSentence& sentence, Span instance, std::size_t context) {
    SituatedCandidate sc = make_situated(sentence.tags, instance, context);
    std::vector<std::vector<Symbol>> tiles;
    for (auto [start, end] : tile_slices(sc))
        tiles.emplace_back(sc.symbols.begin() + static_cast<std::ptrdiff_t>(start),
                           sc.symbols.begin() + static_cast<std::ptrdiff_t>(end) + 1);
    return tiles;
}

std::optional<TileCounts> MemoryTrie::lookup(std::span<const Symbol> tile) const {
    if (tile.empty()) return std::nullopt;
    const Node* node = root_.get();
    for (Symbol s : tile) {
        auto it = node->children.find(s);
        if (it == node->children.end()) return std::nullopt;
        node = it->second.get();
    }
    return TileCounts{node->positive, node->total};
}

TrieCursor MemoryTrie::root_cursor() const { return TrieCursor(root_.get()); }

void MemoryTrie::for_each_node(
    const std::function<void(const std::vector<Symbol>&, const TileCounts&)>& fn) const {
    std::vector<Symbol> path;
    // Depth-bounded by the longest tile; plain recursion.
    auto walk = [&](auto&& self, const Node* node) -> void {
        for (const auto& [sym, child] : node->children) {
            path.push_back(sym);
            fn(path, TileCounts{child->positive, child->total});
            self(self, child.get());
            path.pop_back();
        }
    };
    walk(walk, root_.get());
}

void MemoryTrie::save_snapshot(std::ostream& out, const SymbolTable& table) const {
    out.write(kMagic, 4);
    put_u32(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(context_));
    put_u64(out, sentence_count_);
    put_u64(out, tile_insertions_);
    put_u64(out, node_count_);
    put_u32(out, static_cast<std::uint32_t>(table.tag_count()));
    for (const std::string& tag : table.tags()) {
        put_u32(out, static_cast<std::uint32_t>(tag.size()));
        out.write(tag.data(), static_cast<std::streamsize>(tag.size()));
    }
    save_node(out, root_.get());
    if (!out) throw IoError("failed to write snapshot");
}

MemoryTrie MemoryTrie::load_snapshot(std::istream& in, SymbolTable& table) {
    if (!table.empty())
        throw DataError("snapshot must be loaded into an empty symbol table");
    char magic[4];
    if (!in.read(magic, 4) || std::string_view(magic, 4) != std::string_view(kMagic, 4))
        throw DataError("not a memory snapshot (bad magic)");
    std::uint32_t version = get_u32(in);
    if (version != kFormatVersion)
        throw DataError("unsupported snapshot version " + std::to_string(version));

    MemoryTrie trie;
    trie.context_ = get_u32(in);
    trie.sentence_count_ = get_u64(in);
    trie.tile_insertions_ = get_u64(in);
    std::uint64_t expected_nodes = get_u64(in);

    std::uint32_t tag_count = get_u32(in);
    for (std::uint32_t i = 0; i < tag_count; ++i) {
        std::uint32_t len = get_u32(in);
        std::string tag(len, '\0');
        if (!in.read(tag.data(), len)) throw DataError("truncated snapshot");
        table.intern(tag);
    }

    trie.root_ = std::make_shared<Node>();
    std::size_t nodes_seen = 0;
    load_node(in, trie.root_.get(),
              Symbol::kFirstTagId + tag_count, nodes_seen);
    if (nodes_seen != expected_nodes)
        throw DataError("snapshot node count mismatch");
    trie.node_count_ = nodes_seen;
    return trie;
}

MemoryTrie build_memory(const Corpus& corpus, std::size_t context) {
    if (context < 1) throw std::invalid_argument("context size must be >= 1");
    if (corpus.empty()) throw DataError("empty corpus");

    MemoryTrie trie;
    trie.root_ = std::make_shared<Node>();
    trie.context_ = context;
    trie.sentence_count_ = corpus.size();

    Node* root = trie.root_.get();
    for (const BracketedSentence& s : corpus.sentences())
        for (const Span& instance : s.instances)
            insert_instance_tiles(root, make_situated(s.tags, instance, context),
                                  trie.tile_insertions_);

    for (const BracketedSentence& s : corpus.sentences())
        for (std::size_t p = 0; p < s.tags.size(); ++p)
            accumulate_totals(root, s.tags, p, p);

    trie.node_count_ = count_nodes(root);
    return trie;
}

}  // namespace mbsl
