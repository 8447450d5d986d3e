#include "rsolve/parser.hpp"

#include <cctype>

namespace rsolve {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message), line_(line), column_(column) {}

namespace {

enum class Tok { Number, X, Y, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    int line, column;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Number: return "number";
        case Tok::X: return "'x'";
        case Tok::Y: return "'y'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::End: return "end of input";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&] {
        if (s[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < s.size()) {
        unsigned char ch = static_cast<unsigned char>(s[i]);
        if (std::isspace(ch)) {
            advance();
            continue;
        }
        Token t{Tok::End, std::string(1, s[i]), line, col};
        if (std::isdigit(ch)) {
            t.kind = Tok::Number;
            t.text.clear();
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                t.text += s[i];
                advance();
            }
            out.push_back(std::move(t));
            continue;
        }
        switch (ch) {
            case 'x': t.kind = Tok::X; break;
            case 'y': t.kind = Tok::Y; break;
            case '+': t.kind = Tok::Plus; break;
            case '-': t.kind = Tok::Minus; break;
            case '*': t.kind = Tok::Star; break;
            case '/': t.kind = Tok::Slash; break;
            case '^': t.kind = Tok::Caret; break;
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            default: throw ParseError("unexpected character '" + t.text + "'", line, col);
        }
        out.push_back(std::move(t));
        advance();
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

int precedence(Tok t) {
    switch (t) {
        case Tok::Plus:
        case Tok::Minus: return 1;
        case Tok::Star:
        case Tok::Slash: return 2;
        default: return 0;
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    RatFun parse() {
        RatFun r = binary(1);
        if (peek().kind != Tok::End) fail("unexpected " + std::string(describe(peek().kind)), peek());
        return r;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] static void fail(const std::string& msg, const Token& at) {
        throw ParseError(msg, at.line, at.column);
    }

    // Precedence climbing over the left-associative binary operators.
    RatFun binary(int min_prec) {
        RatFun lhs = unary();
        while (precedence(peek().kind) >= min_prec) {
            const Token& op = next();
            RatFun rhs = binary(precedence(op.kind) + 1);
            switch (op.kind) {
                case Tok::Plus: lhs = lhs + rhs; break;
                case Tok::Minus: lhs = lhs - rhs; break;
                case Tok::Star: lhs = lhs * rhs; break;
                default:
                    if (rhs.is_zero()) fail("division by the zero polynomial", op);
                    lhs = lhs / rhs;
            }
        }
        return lhs;
    }

    RatFun unary() {
        if (peek().kind == Tok::Minus) {
            next();
            return -unary();
        }
        if (peek().kind == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    RatFun power() {
        RatFun base = primary();
        if (peek().kind != Tok::Caret) return base;
        next();
        const Token& e = next();
        if (e.kind != Tok::Number) fail("exponent must be a nonnegative integer", e);
        if (e.text.size() > 3 || std::stoul(e.text) > kMaxExponent)
            fail("exponent " + e.text + " exceeds " + std::to_string(kMaxExponent), e);
        if (peek().kind == Tok::Caret) fail("chained exponents need parentheses", peek());
        return pow(base, static_cast<unsigned>(std::stoul(e.text)));
    }

    RatFun primary() {
        const Token& t = next();
        switch (t.kind) {
            case Tok::Number: return RatFun(Rational(mpz_class(t.text)));
            case Tok::X: return RatFun(BiPoly::x());
            case Tok::Y: return RatFun(BiPoly::y());
            case Tok::LParen: {
                RatFun r = binary(1);
                if (peek().kind != Tok::RParen) fail("expected ')' before " + std::string(describe(peek().kind)), peek());
                next();
                return r;
            }
            default: fail("unexpected " + std::string(describe(t.kind)), t);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFun parse_expr(std::string_view text) {
    return Parser(tokenize(text)).parse();
}

std::string print_expr(const RatFun& r) { return r.to_string(); }

}  // namespace rsolve
