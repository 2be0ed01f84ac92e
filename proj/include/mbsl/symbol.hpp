#ifndef MBSL_SYMBOL_HPP
#define MBSL_SYMBOL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mbsl {

// One element of the sequence alphabet: an interned POS tag or one of the
// two bracket markers. Brackets have fixed ids below every tag id, so a
// Symbol is fully described by its id.
class Symbol {
public:
    enum class Kind { Tag, OpenBracket, CloseBracket };

    static constexpr std::uint32_t kOpenId = 0;
    static constexpr std::uint32_t kCloseId = 1;
    static constexpr std::uint32_t kFirstTagId = 2;

    constexpr Symbol() : id_(kOpenId) {}

    static constexpr Symbol open_bracket() { return Symbol(kOpenId); }
    static constexpr Symbol close_bracket() { return Symbol(kCloseId); }
    static constexpr Symbol tag(std::uint32_t tag_index) {
        return Symbol(kFirstTagId + tag_index);
    }
    static constexpr Symbol from_id(std::uint32_t id) { return Symbol(id); }

    constexpr std::uint32_t id() const { return id_; }

    constexpr bool is_tag() const { return id_ >= kFirstTagId; }
    constexpr bool is_bracket() const { return id_ < kFirstTagId; }
    constexpr bool is_open() const { return id_ == kOpenId; }
    constexpr bool is_close() const { return id_ == kCloseId; }

    constexpr Kind kind() const {
        if (id_ == kOpenId) return Kind::OpenBracket;
        if (id_ == kCloseId) return Kind::CloseBracket;
        return Kind::Tag;
    }

    // Index into SymbolTable storage; only meaningful for tags.
    constexpr std::uint32_t tag_index() const { return id_ - kFirstTagId; }

    friend constexpr bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend constexpr bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }
    friend constexpr bool operator<(Symbol a, Symbol b) { return a.id_ < b.id_; }

private:
    explicit constexpr Symbol(std::uint32_t id) : id_(id) {}

    std::uint32_t id_;
};

// Bijective interning of tag strings. Ids are assigned in first-seen order,
// so re-parsing the same text against the same table reproduces identical
// id sequences.
class SymbolTable {
public:
    // Returns the existing symbol for `tag` or interns a new one.
    // "[" and "]" are reserved and rejected.
    Symbol intern(std::string_view tag);

    std::optional<Symbol> find(std::string_view tag) const;

    // Name of any symbol, brackets included.
    std::string_view name(Symbol s) const;

    std::size_t tag_count() const { return tags_.size(); }

    // Tag strings in id order; the serialization order of the table.
    const std::vector<std::string>& tags() const { return tags_; }

    bool empty() const { return tags_.empty(); }

private:
    std::vector<std::string> tags_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace mbsl

#endif  // MBSL_SYMBOL_HPP
