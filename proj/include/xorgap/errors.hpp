#pragma once

#include <stdexcept>
#include <string>

namespace xorgap {

// Raised when an exact enumeration would exceed its caller-supplied budget.
// There is deliberately no approximate fallback anywhere in this library.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// File format violation; line is 1-based, 0 when not tied to a specific line.
class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

struct InvalidComplex : std::invalid_argument {
    explicit InvalidComplex(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace xorgap
