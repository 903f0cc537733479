#pragma once

// A small expression parser for rational functions in one variable:
// integers, the variable, + - * / ^ and parentheses, with juxtaposition as
// multiplication ("7 (539+r^2)", "2 r"). Used by the CLI and data tooling;
// canonical serialization stays coefficient-based.

#include "mwforge/poly.hpp"
#include "mwforge/ratfunc.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace mwforge {

namespace detail {

class expr_parser {
public:
    expr_parser(const std::string& src, const std::string& var) : src_(src), var_(var) {}

    ratfunc parse() {
        ratfunc v = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return v;
    }

private:
    ratfunc expr() {
        ratfunc v = term();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                v = v + term();
            } else if (peek() == '-') {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    ratfunc term() {
        ratfunc v = factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                v = v * factor();
            } else if (c == '/') {
                ++pos_;
                v = v / factor();
            } else if (c == '(' || std::isalpha(static_cast<unsigned char>(c)) ||
                       std::isdigit(static_cast<unsigned char>(c))) {
                v = v * factor();  // juxtaposition
            } else {
                return v;
            }
        }
    }

    ratfunc factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -factor();
        }
        if (peek() == '+') {
            ++pos_;
            return factor();
        }
        ratfunc v = base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            bool negexp = false;
            if (peek() == '-') {
                negexp = true;
                ++pos_;
            }
            std::string digits = read_digits();
            if (digits.empty()) fail("exponent expected");
            long e = std::stol(digits);
            v = v.pow(negexp ? -e : e);
        }
        return v;
    }

    ratfunc base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            ratfunc v = expr();
            skip_ws();
            if (peek() != ')') fail("')' expected");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return ratfunc(rational(zint_from_string(read_digits())));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                name += src_[pos_++];
            if (name != var_) fail("unknown symbol '" + name + "' (variable is '" + var_ + "')");
            return ratfunc(poly::variable());
        }
        fail("value expected");
        return ratfunc();
    }

    std::string read_digits() {
        std::string out;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            out += src_[pos_++];
        return out;
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + why);
    }

    const std::string& src_;
    std::string var_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ratfunc parse_ratfunc(const std::string& src, const std::string& var = "t") {
    return detail::expr_parser(src, var).parse();
}

inline poly parse_poly(const std::string& src, const std::string& var = "t") {
    ratfunc f = parse_ratfunc(src, var);
    if (!f.den_primitive().is_one())
        throw std::invalid_argument("expression is not polynomial: " + src);
    return f.num_poly();
}

}  // namespace mwforge
