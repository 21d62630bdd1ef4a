#pragma once
// Text form of relation polynomials.
//
// Grammar (whitespace insignificant):
//   expr    := ('+'|'-')? term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := atom ('^' uint)?
//   atom    := 'X11' | 'X12' | 'X21' | 'X22' | identifier
//            | integer ('/' uint)? | '(' expr ')'
//
// Identifiers must be declared in the symbol table.  The canonical printer
// (RelPoly::to_string) emits terms in descending lexicographic monomial
// order and never needs more than the optional leading sign; parsing its
// output returns the original polynomial.

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relpoly.hpp"

namespace cmrel {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " at offset " + std::to_string(off)), offset(off) {}
};

namespace detail {

enum class Tok { End, Plus, Minus, Star, Caret, Slash, LParen, RParen, Int, Ident };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;  // for Int / Ident
};

inline std::vector<Token> lex_poly(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        switch (c) {
            case '+': out.push_back({Tok::Plus, i, ""}); ++i; continue;
            case '-': out.push_back({Tok::Minus, i, ""}); ++i; continue;
            case '*': out.push_back({Tok::Star, i, ""}); ++i; continue;
            case '^': out.push_back({Tok::Caret, i, ""}); ++i; continue;
            case '/': out.push_back({Tok::Slash, i, ""}); ++i; continue;
            case '(': out.push_back({Tok::LParen, i, ""}); ++i; continue;
            case ')': out.push_back({Tok::RParen, i, ""}); ++i; continue;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, i, s.substr(i, j - i)});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                                    s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, i, s.substr(i, j - i)});
            i = j;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

class PolyParser {
public:
    PolyParser(const std::string& text, SymbolTableRef tab)
        : toks_(lex_poly(text)), tab_(std::move(tab)) {}

    RelPoly parse() {
        RelPoly p = parse_expr();
        expect(Tok::End, "syntax error");
        return p;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    void expect(Tok k, const char* msg) {
        if (peek().kind != k) throw ParseError(msg, peek().offset);
        ++pos_;
    }

    RelPoly parse_expr() {
        bool neg = false;
        if (peek().kind == Tok::Plus) {
            next();
        } else if (peek().kind == Tok::Minus) {
            neg = true;
            next();
        }
        RelPoly acc = parse_term();
        if (neg) acc = -acc;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            RelPoly t = parse_term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    RelPoly parse_term() {
        RelPoly acc = parse_factor();
        while (peek().kind == Tok::Star) {
            next();
            acc *= parse_factor();
        }
        return acc;
    }

    RelPoly parse_factor() {
        RelPoly a = parse_atom();
        if (peek().kind == Tok::Caret) {
            next();
            if (peek().kind != Tok::Int) throw ParseError("expected exponent", peek().offset);
            const Token& t = next();
            unsigned long e = to_uint(t);
            a = a.pow(e);
        }
        return a;
    }

    RelPoly parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: {
                next();
                mpz_class num(t.text);
                if (peek().kind == Tok::Slash) {
                    next();
                    if (peek().kind != Tok::Int)
                        throw ParseError("expected denominator", peek().offset);
                    const Token& d = next();
                    mpz_class den(d.text);
                    if (den == 0) throw ParseError("zero denominator", d.offset);
                    mpq_class q(num, den);
                    q.canonicalize();
                    return RelPoly::constant(tab_, q);
                }
                return RelPoly::constant(tab_, mpq_class(num));
            }
            case Tok::Ident: {
                next();
                if (is_matrix_variable_name(t.text)) {
                    int idx = (t.text == "X11") ? 0 : (t.text == "X12") ? 1
                              : (t.text == "X21") ? 2 : 3;
                    return RelPoly::variable(tab_, idx);
                }
                auto idx = tab_->find(t.text);
                if (!idx)
                    throw ParseError("undeclared identifier '" + t.text + "'", t.offset);
                return RelPoly::constant(tab_, CoeffPoly::symbol(tab_, *idx));
            }
            case Tok::LParen: {
                next();
                RelPoly inner = parse_expr();
                expect(Tok::RParen, "expected ')'");
                return inner;
            }
            default:
                throw ParseError("syntax error", t.offset);
        }
    }

    static unsigned long to_uint(const Token& t) {
        mpz_class v(t.text);
        if (!v.fits_ulong_p()) throw ParseError("exponent too large", t.offset);
        return v.get_ui();
    }

    std::vector<Token> toks_;
    SymbolTableRef tab_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Parses the grammar above over the given symbol table.
inline RelPoly parse_relpoly(const std::string& text, const SymbolTableRef& tab) {
    return detail::PolyParser(text, tab).parse();
}

}  // namespace cmrel
