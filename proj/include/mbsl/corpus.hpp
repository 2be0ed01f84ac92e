#ifndef MBSL_CORPUS_HPP
#define MBSL_CORPUS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mbsl/symbol.hpp"

namespace mbsl {

// Half-open range of tag positions.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }
    bool overlaps(const Span& other) const {
        return start < other.end && other.start < end;
    }

    friend bool operator==(const Span&, const Span&) = default;
    friend bool operator<(const Span& a, const Span& b) {
        return a.start != b.start ? a.start < b.start : a.end < b.end;
    }
};

// A sentence as a plain sequence of tag symbols; never contains brackets.
using TagSequence = std::vector<Symbol>;

bool is_tag_sequence(std::span<const Symbol> tags);

// A tag sequence plus the non-overlapping target-instance spans marked in
// it. Doubles as the output type of the bracketer.
struct BracketedSentence {
    TagSequence tags;
    std::vector<Span> instances;

    friend bool operator==(const BracketedSentence&, const BracketedSentence&) = default;
};

// Sentences parsed against one symbol table. The table is owned by the
// caller and must outlive the corpus.
class Corpus {
public:
    Corpus() : table_(nullptr) {}
    Corpus(const SymbolTable* table, std::vector<BracketedSentence> sentences)
        : table_(table), sentences_(std::move(sentences)) {}

    const SymbolTable& symbols() const { return *table_; }
    const SymbolTable* symbols_ptr() const { return table_; }
    std::span<const BracketedSentence> sentences() const { return sentences_; }
    const BracketedSentence& sentence(std::size_t i) const { return sentences_[i]; }

    std::size_t size() const { return sentences_.size(); }
    bool empty() const { return sentences_.empty(); }
    std::size_t instance_count() const;
    std::size_t word_count() const;

private:
    const SymbolTable* table_;
    std::vector<BracketedSentence> sentences_;
};

// Optional word -> replacement-tag map applied while reading `word/TAG`
// corpora. Words are matched case-insensitively (ASCII).
class RetagRules {
public:
    RetagRules() = default;

    bool empty() const { return rules_.empty(); }
    void add(std::string_view word, std::string_view tag);

    // Replacement tag for `word`, or empty view if no rule matches.
    std::string_view match(std::string_view word) const;

    // Lines of "word<TAB>tag"; blank lines are skipped.
    static RetagRules parse(std::istream& in);
    static RetagRules load(const std::string& path);

private:
    std::unordered_map<std::string, std::string> rules_;
};

// Resolves one raw corpus token to its tag string. Splits `word/TAG` at the
// last slash and applies retag rules to the word part; a plain token is its
// own tag. With non-empty rules every non-bracket token must carry a word
// part.
std::string resolve_token_tag(std::string_view token, const RetagRules& rules,
                              std::size_t line, std::size_t column);

// Token-stream form of the retagging hook: each raw token becomes a bare
// tag token (brackets pass through).
std::vector<std::string> apply_retag_rules(std::span<const std::string> tokens,
                                           const RetagRules& rules);

// One sentence per line, whitespace-separated tokens, "[" and "]" as
// standalone bracket tokens. Blank lines are skipped. Throws ParseError
// with line/column on malformed input.
Corpus parse_corpus(std::istream& in, SymbolTable& table,
                    const RetagRules& rules = RetagRules());
Corpus parse_corpus_text(const std::string& text, SymbolTable& table,
                         const RetagRules& rules = RetagRules());

// Parses a single line; returns false (and leaves `out` untouched) for a
// blank line.
bool parse_sentence_line(std::string_view line, std::size_t line_number,
                         SymbolTable& table, const RetagRules& rules,
                         BracketedSentence& out);

// Inverse of parse for one sentence: tokens joined by single spaces.
std::string serialize_sentence(const BracketedSentence& s, const SymbolTable& table);

void write_corpus(const Corpus& corpus, std::ostream& out);

}  // namespace mbsl

#endif  // MBSL_CORPUS_HPP
