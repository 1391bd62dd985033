#pragma once

// Recursive-descent reader for polynomial expressions:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' integer)?
//   base   := rational | identifier | '(' expr ')'
//
// Rationals are written "p" or "p/q". The builder decides what an
// identifier means (a parameter, the variable t, ...).

#include "treeinv/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

namespace treeinv {

template <class Value, class Builder>
class ExpressionReader {
public:
    ExpressionReader(std::string_view text, const Builder &builder) : text_(text), builder_(builder) {}

    Value read()
    {
        Value v = expr();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        return v;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Value expr()
    {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        Value acc = term();
        if (negate)
            acc = -acc;
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Value term()
    {
        Value acc = factor();
        while (accept('*'))
            acc = acc * factor();
        return acc;
    }

    Value factor()
    {
        Value b = base();
        if (accept('^')) {
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                throw ParseError("expected exponent", pos_);
            unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
            return builder_.power(b, e);
        }
        return b;
    }

    Value base()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string num(text_.substr(start, pos_ - start));
            mpq_class q{mpz_class(num)};
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                std::size_t dstart = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
                mpz_class den(std::string(text_.substr(dstart, pos_ - dstart)));
                if (den == 0)
                    throw ParseError("zero denominator", dstart);
                q = mpq_class(mpz_class(num), den);
                q.canonicalize();
            }
            return builder_.constant(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return builder_.variable(text_.substr(start, pos_ - start), start);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    std::string_view text_;
    const Builder &builder_;
    std::size_t pos_ = 0;
};

template <class Value, class Builder>
Value read_expression(std::string_view text, const Builder &builder)
{
    return ExpressionReader<Value, Builder>(text, builder).read();
}

} // namespace treeinv
