#ifndef MBSL_ERRORS_HPP
#define MBSL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbsl {

// Malformed corpus or rules text. Positions are 1-based; column 0 means
// "whole line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column = 0)
        : std::runtime_error(format(message, line, column)),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line,
                              std::size_t column) {
        std::string out = "line " + std::to_string(line);
        if (column > 0) out += ", column " + std::to_string(column);
        out += ": " + message;
        return out;
    }

    std::size_t line_;
    std::size_t column_;
};

// Structurally invalid data: corrupt snapshot, mismatched gold/predicted
// corpora, empty training corpus.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& message)
        : std::runtime_error(message) {}
};

// Failure to open or read/write a file.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message)
        : std::runtime_error(message) {}
};

}  // namespace mbsl

#endif  // MBSL_ERRORS_HPP
