#ifndef POLYINDEX_PARSE_HPP
#define POLYINDEX_PARSE_HPP

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "error.hpp"
#include "intpoly.hpp"

namespace polyindex {

/// Exponents above this are rejected to keep expansion bounded.
inline constexpr unsigned kMaxExponent = 4096;

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := ('+' | '-') unary | power
// power  := atom ('^' digits)?
// atom   := digits | 'x' | '(' expr ')'
class PolyParser {
   public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    IntPoly parse() {
        skip_space();
        if (pos_ == text_.size()) fail(ErrorKind::SyntaxError, "empty expression");
        IntPoly result = expr();
        skip_space();
        if (pos_ != text_.size()) unexpected();
        return result;
    }

   private:
    [[noreturn]] void fail(ErrorKind kind, const std::string& what) const { throw ParseError(kind, pos_, what); }

    [[noreturn]] void unexpected() const {
        if (pos_ >= text_.size()) fail(ErrorKind::SyntaxError, "unexpected end of input");
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) && c != 'x' && !after_operand_)
            fail(ErrorKind::UnknownVariable, std::string("unknown variable '") + c + "'");
        fail(ErrorKind::SyntaxError, std::string("unexpected '") + c + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    IntPoly expr() {
        IntPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    IntPoly term() {
        IntPoly acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    IntPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    IntPoly power() {
        IntPoly base = atom();
        if (!accept('^')) return base;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '-') fail(ErrorKind::NegativeExponent, "negative exponent");
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail(ErrorKind::SyntaxError, "exponent must be a non-negative integer literal");
        const std::size_t start = pos_;
        unsigned long long e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + static_cast<unsigned>(text_[pos_] - '0');
            if (e > kMaxExponent) {
                pos_ = start;
                fail(ErrorKind::SyntaxError, "exponent exceeds " + std::to_string(kMaxExponent));
            }
            ++pos_;
        }
        after_operand_ = true;
        return pow(base, static_cast<unsigned>(e));
    }

    IntPoly atom() {
        skip_space();
        if (pos_ >= text_.size()) fail(ErrorKind::SyntaxError, "unexpected end of input");
        const char c = text_[pos_];
        IntPoly result;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer value = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                value = value * 10 + (text_[pos_++] - '0');
            result = IntPoly::constant(value);
        } else if (c == 'x') {
            ++pos_;
            result = IntPoly::x();
        } else if (c == '(') {
            ++pos_;
            result = expr();
            if (!accept(')')) {
                skip_space();
                after_operand_ = true;
                unexpected();
            }
        } else {
            after_operand_ = false;
            unexpected();
        }
        after_operand_ = true;
        // reject implicit multiplication such as "3x" or "x(x+1)"
        skip_space();
        if (pos_ < text_.size()) {
            const char next = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(next)) || next == '(')
                fail(ErrorKind::SyntaxError, "implicit multiplication is not allowed");
        }
        return result;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    bool after_operand_ = false;
};

}  // namespace detail

/// Parses an integer polynomial in x, e.g. "(x+1)^2 - 2". Throws ParseError
/// (SyntaxError, NegativeExponent or UnknownVariable) with the byte offset.
inline IntPoly parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace polyindex

#endif  // POLYINDEX_PARSE_HPP
