#include "mbsl/corpus.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mbsl/errors.hpp"

namespace mbsl {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

}  // namespace

bool is_tag_sequence(std::span<const Symbol> tags) {
    for (Symbol s : tags)
        if (!s.is_tag()) return false;
    return true;
}

std::size_t Corpus::instance_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences_) n += s.instances.size();
    return n;
}

std::size_t Corpus::word_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences_) n += s.tags.size();
    return n;
}

void RetagRules::add(std::string_view word, std::string_view tag) {
    rules_[ascii_lower(word)] = std::string(tag);
}

std::string_view RetagRules::match(std::string_view word) const {
    auto it = rules_.find(ascii_lower(word));
    if (it == rules_.end()) return {};
    return it->second;
}

RetagRules RetagRules::parse(std::istream& in) {
    RetagRules rules;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw ParseError("expected 'word<TAB>tag'", lineno);
        rules.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return rules;
}

RetagRules RetagRules::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open retag rules file: " + path);
    return parse(in);
}

std::string resolve_token_tag(std::string_view token, const RetagRules& rules,
                              std::size_t line, std::size_t column) {
    auto slash = token.rfind('/');
    if (slash == std::string_view::npos) {
        if (!rules.empty())
            throw ParseError("token '" + std::string(token) +
                                 "' lacks a word/TAG form but retag rules are active",
                             line, column);
        return std::string(token);
    }
    std::string_view word = token.substr(0, slash);
    std::string_view tag = token.substr(slash + 1);
    if (tag.empty())
        throw ParseError("token '" + std::string(token) + "' has an empty tag part",
                         line, column);
    std::string_view replacement = rules.match(word);
    return std::string(replacement.empty() ? tag : replacement);
}

std::vector<std::string> apply_retag_rules(std::span<const std::string> tokens,
                                           const RetagRules& rules) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        if (tok == "[" || tok == "]")
            out.push_back(tok);
        else
            out.push_back(resolve_token_tag(tok, rules, 1, i + 1));
    }
    return out;
}

bool parse_sentence_line(std::string_view line, std::size_t line_number,
                         SymbolTable& table, const RetagRules& rules,
                         BracketedSentence& out) {
    BracketedSentence sentence;
    bool in_instance = false;
    std::size_t open_column = 0;
    std::size_t instance_start = 0;
    bool saw_token = false;

    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) ++i;
        std::string_view token = line.substr(start, i - start);
        std::size_t column = start + 1;
        saw_token = true;

        if (token == "[") {
            if (in_instance)
                throw ParseError("nested '[' inside an open instance", line_number, column);
            in_instance = true;
            open_column = column;
            instance_start = sentence.tags.size();
        } else if (token == "]") {
            if (!in_instance)
                throw ParseError("']' without a matching '['", line_number, column);
            if (sentence.tags.size() == instance_start)
                throw ParseError("empty instance '[ ]'", line_number, column);
            sentence.instances.push_back({instance_start, sentence.tags.size()});
            in_instance = false;
        } else {
            std::string tag = resolve_token_tag(token, rules, line_number, column);
            if (tag == "[" || tag == "]")
                throw ParseError("bracket '" + tag + "' used as a tag", line_number, column);
            sentence.tags.push_back(table.intern(tag));
        }
    }

    if (!saw_token) return false;
    if (in_instance)
        throw ParseError("'[' without a matching ']'", line_number, open_column);
    out = std::move(sentence);
    return true;
}

Corpus parse_corpus(std::istream& in, SymbolTable& table, const RetagRules& rules) {
    std::vector<BracketedSentence> sentences;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        BracketedSentence sentence;
        if (parse_sentence_line(line, lineno, table, rules, sentence))
            sentences.push_back(std::move(sentence));
    }
    return Corpus(&table, std::move(sentences));
}

Corpus parse_corpus_text(const std::string& text, SymbolTable& table,
                         const RetagRules& rules) {
    std::istringstream in(text);
    return parse_corpus(in, table, rules);
}

std::string serialize_sentence(const BracketedSentence& s, const SymbolTable& table) {
    std::string out;
    std::size_t next = 0;  // next instance to open
    std::size_t open = s.instances.size();  // currently open instance, if any
    for (std::size_t i = 0; i < s.tags.size(); ++i) {
        if (next < s.instances.size() && s.instances[next].start == i) {
            if (!out.empty()) out += ' ';
            out += '[';
            open = next++;
        }
        if (!out.empty()) out += ' ';
        out += table.name(s.tags[i]);
        if (open < s.instances.size() && s.instances[open].end == i + 1) {
            out += " ]";
            open = s.instances.size();
        }
    }
    return out;
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
    for (const auto& s : corpus.sentences())
        out << serialize_sentence(s, corpus.symbols()) << '\n';
}

}  // namespace mbsl
