#pragma once

// Expressions over Q in x and y: integers, + - * / ^, parentheses.
// Exponents are nonnegative integer literals. Every quotient is normalized by
// rational-function arithmetic, so nested divisions are allowed.

#include "rsolve/ratfun.hpp"

#include <string_view>

namespace rsolve {

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }
    /// The message without the position prefix.
    const std::string& message() const { return message_; }

private:
    std::string message_;
    int line_, column_;
};

constexpr unsigned kMaxExponent = 64;

/// Throws ParseError on syntax errors, division by the zero polynomial and
/// exponents above kMaxExponent.
RatFun parse_expr(std::string_view text);

/// Inverse of parse_expr: parse_expr(print_expr(r)) == r.
std::string print_expr(const RatFun& r);

}  // namespace rsolve
