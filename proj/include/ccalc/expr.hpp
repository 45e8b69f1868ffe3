#pragma once
#include <cctype>
#include <string>

#include "gring.hpp"

namespace ccalc {

// Tiny infix evaluator: +, -, *, /, ^, parentheses, integer literals,
// generator names.  '/' requires a nonzero constant divisor (rational
// literals like 3/4 fall out of this).  '^' takes a literal exponent.
class ExprParser {
public:
    ExprParser(RingPtr ring, std::string src) : ring_(std::move(ring)), src_(std::move(src)) {}

    Element parse() {
        Element e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("ParseError", "unexpected input at offset " + std::to_string(pos_));
        return e;
    }

private:
    RingPtr ring_;
    std::string src_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Element expr() {
        Element acc = term();
        for (;;) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    Element term() {
        Element acc = unary();
        for (;;) {
            if (eat('*')) acc = acc * unary();
            else if (eat('/')) {
                Element d = unary();
                if (!d.is_zero() && !is_homogeneous_of(d, 0))
                    fail("ParseError", "division only by nonzero rational constants");
                Rat q = constant_term(d);
                if (q == 0) fail("ParseError", "division by zero");
                acc = acc * (Rat(1) / q);
            } else return acc;
        }
    }

    Element unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Element power() {
        Element base = atom();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                fail("ParseError", "exponent must be a non-negative integer literal");
            int e = int_lit();
            return elem_pow(base, e);
        }
        return base;
    }

    int int_lit() {
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return std::stoi(src_.substr(start, pos_ - start));
    }

    Element atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("ParseError", "unexpected end of expression");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Element e = expr();
            if (!eat(')')) fail("ParseError", "missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return elem_const(ring_, Rat(Int(src_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name = src_.substr(start, pos_ - start);
            return elem_gen(ring_, name); // UnknownGenerator if absent
        }
        fail("ParseError", std::string("unexpected character '") + c + "'");
    }
};

inline Element eval_expr(const RingPtr& ring, const std::string& src) {
    return ExprParser(ring, src).parse();
}

} // namespace ccalc
