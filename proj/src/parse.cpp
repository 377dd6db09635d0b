

#include "cb/parse.hpp"

#include <algorithm>
#include <cctype>

namespace cb {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i < text.size() && text[i] == '/' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                ++i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            }
            out.push_back({Tok::Number, text.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            ++i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                       text[i] == '\''))
                ++i;
            out.push_back({Tok::Ident, text.substr(start, i - start), start});
            continue;
        }
        Tok kind;
        switch (ch) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            default:
                throw ParseError(ErrorCode::UnknownCharacter,
                                 std::string("unexpected character '") + ch + "'", i);
        }
        out.push_back({kind, std::string(1, ch), i});
        ++i;
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::vector<std::string> vars)
        : tokens_(std::move(tokens)), vars_(std::move(vars)) {}

    MPoly run() {
        MPoly p = expr();
        if (peek().kind != Tok::End)
            throw ParseError(ErrorCode::SyntaxError, "unexpected trailing input", peek().pos);
        return p;
    }

  private:
    const Token& peek() const { return tokens_[at_]; }
    Token take() { return tokens_[at_++]; }
    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++at_;
        return true;
    }

    MPoly expr() {
        bool negate = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
            negate = take().kind == Tok::Minus;
        MPoly acc = term();
        if (negate) acc = -acc;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = take().kind == Tok::Minus;
            MPoly rhs = term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    MPoly term() {
        MPoly acc = factor();
        while (accept(Tok::Star)) acc *= factor();
        return acc;
    }

    MPoly factor() {
        MPoly b = base();
        if (accept(Tok::Caret)) {
            const Token& t = peek();
            if (t.kind != Tok::Number || t.text.find('/') != std::string::npos)
                throw ParseError(ErrorCode::SyntaxError, "expected integer exponent", t.pos);
            take();
            long e = 0;
            try {
                e = std::stol(t.text);
            } catch (const std::exception&) {
                throw ParseError(ErrorCode::SyntaxError, "exponent out of range", t.pos);
            }
            if (e > 4096)
                throw ParseError(ErrorCode::SyntaxError, "exponent out of range", t.pos);
            b = b.pow(static_cast<int>(e));
        }
        return b;
    }

    MPoly base() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                take();
                auto slash = t.text.find('/');
                Rat q;
                if (slash == std::string::npos) {
                    q = Rat(mpz_class(t.text));
                } else {
                    mpz_class den(t.text.substr(slash + 1));
                    if (den == 0)
                        throw ParseError(ErrorCode::SyntaxError, "zero denominator",
                                         t.pos + slash + 1);
                    q = Rat(mpz_class(t.text.substr(0, slash)), den);
                    q.canonicalize();
                }
                return MPoly::constant(vars_, Scalar(q));
            }
            case Tok::Ident:
                take();
                return MPoly::variable(vars_, t.text);
            case Tok::LParen: {
                take();
                MPoly inner = expr();
                if (!accept(Tok::RParen))
                    throw ParseError(ErrorCode::SyntaxError, "expected ')'", peek().pos);
                return inner;
            }
            default:
                throw ParseError(ErrorCode::SyntaxError, "expected number, variable or '('",
                                 t.pos);
        }
    }

    std::vector<Token> tokens_;
    std::vector<std::string> vars_;
    std::size_t at_ = 0;
};

}  // namespace

MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    if (text.empty()) throw ParseError(ErrorCode::SyntaxError, "empty input", 0);
    auto tokens = lex(text);
    std::vector<std::string> ctx = vars;
    for (const auto& tok : tokens) {
        if (tok.kind != Tok::Ident) continue;
        if (std::find(ctx.begin(), ctx.end(), tok.text) == ctx.end()) {
            if (!vars.empty())
                throw ParseError(ErrorCode::SyntaxError, "unknown variable " + tok.text, tok.pos);
            ctx.push_back(tok.text);
        }
    }
    // Canonical context is alphabetical, so print-then-parse is a fixed point
    // regardless of the order variables appear in the text.
    if (vars.empty()) std::sort(ctx.begin(), ctx.end());
    return Parser(std::move(tokens), std::move(ctx)).run();
}

MPoly parse_poly(const std::string& text) { return parse_poly(text, {}); }

}  // namespace cb
