// Recursive-descent parser for polynomial text such as
//   3/2*x1^2*x2 - x2 + 1   or   (x-1)^2*(x-2)
// '*' between a coefficient and a monomial is optional. Decimal literals are
// accepted only over the floating field.
#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "radtrace/polynomial.hpp"

namespace radtrace {

struct ParseError : std::runtime_error {
    size_t line, column;
    ParseError(const std::string& msg, size_t ln, size_t col)
        : std::runtime_error(msg + " at line " + std::to_string(ln) + ", column " +
                             std::to_string(col)),
          line(ln),
          column(col) {}
};

namespace detail {

template <class K>
K number_from_token(const std::string& tok);

template <>
inline Rat number_from_token<Rat>(const std::string& tok) {
    return rat_from_string(tok);
}
template <>
inline Approx number_from_token<Approx>(const std::string& tok) {
    if (auto slash = tok.find('/'); slash != std::string::npos) {
        return Approx(std::strtod(tok.substr(0, slash).c_str(), nullptr) /
                      std::strtod(tok.substr(slash + 1).c_str(), nullptr));
    }
    return Approx(std::strtod(tok.c_str(), nullptr));
}

template <class K>
class PolyParser {
   public:
    PolyParser(const std::string& text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    Polynomial<K> parse() {
        Polynomial<K> p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

   private:
    const std::string& text_;
    const std::vector<std::string>& vars_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        size_t line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') ++line, col = 1;
            else ++col;
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Polynomial<K> expr() {
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++pos_;
        }
        Polynomial<K> acc = term();
        if (neg) acc = -acc;
        while (true) {
            c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Polynomial<K> t = term();
                if (c == '+')
                    acc += t;
                else
                    acc -= t;
            } else {
                return acc;
            }
        }
    }

    Polynomial<K> term() {
        Polynomial<K> acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                       std::isdigit(static_cast<unsigned char>(c))) {
                acc = acc * factor();  // implicit multiplication
            } else {
                return acc;
            }
        }
    }

    Polynomial<K> factor() {
        Polynomial<K> base = atom();
        if (peek() == '^') {
            ++pos_;
            int p = read_uint();
            Polynomial<K> r = Polynomial<K>::constant(K(1), nvars());
            for (int i = 0; i < p; ++i) r = r * base;
            return r;
        }
        return base;
    }

    Polynomial<K> atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial<K> inner = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
        fail("expected a number, variable or '('");
    }

    int nvars() const { return static_cast<int>(vars_.size()); }

    int read_uint() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected an exponent");
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::atoi(text_.substr(start, pos_ - start).c_str());
    }

    Polynomial<K> number() {
        skip_ws();
        size_t start = pos_;
        bool decimal = false;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            if (text_[pos_] == '.') decimal = true;
            ++pos_;
        }
        std::string tok = text_.substr(start, pos_ - start);
        // rational literal p/q: the slash must be followed by digits
        if (!decimal && peek() == '/' && pos_ + 1 < text_.size()) {
            size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                size_t dstart = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
                tok += "/" + text_.substr(dstart, pos_ - dstart);
            } else {
                pos_ = save;
            }
        }
        if (tok.empty() || tok == ".") fail("malformed number");
        if (decimal && is_exact_field_v<K>) fail("decimal literal not allowed over the exact field");
        return Polynomial<K>::constant(detail::number_from_token<K>(tok), nvars());
    }

    Polynomial<K> variable() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) return Polynomial<K>::variable(static_cast<int>(i), nvars());
        }
        pos_ = start;
        fail("unknown variable '" + name + "'");
    }
};

}  // namespace detail

template <class K>
Polynomial<K> parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    return detail::PolyParser<K>(text, vars).parse();
}

}  // namespace radtrace
