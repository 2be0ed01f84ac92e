#include "mbsl/symbol.hpp"

#include "mbsl/errors.hpp"

namespace mbsl {

Symbol SymbolTable::intern(std::string_view tag) {
    if (tag.empty()) throw DataError("cannot intern an empty tag");
    if (tag == "[" || tag == "]")
        throw DataError("'" + std::string(tag) + "' is a reserved bracket token, not a tag");
    auto it = index_.find(std::string(tag));
    if (it != index_.end()) return Symbol::tag(it->second);
    std::uint32_t idx = static_cast<std::uint32_t>(tags_.size());
    tags_.emplace_back(tag);
    index_.emplace(tags_.back(), idx);
    return Symbol::tag(idx);
}

std::optional<Symbol> SymbolTable::find(std::string_view tag) const {
    auto it = index_.find(std::string(tag));
    if (it == index_.end()) return std::nullopt;
    return Symbol::tag(it->second);
}

std::string_view SymbolTable::name(Symbol s) const {
    if (s.is_open()) return "[";
    if (s.is_close()) return "]";
    return tags_.at(s.tag_index());
}

}  // namespace mbsl
