#include "diffpow/poly.hpp"

namespace diffpow {

namespace {

// Recursive-descent parser for the polynomial grammar. No implicit
// multiplication: "2x" is a parse error, "2*x" is required.
class PolyParser {
public:
    PolyParser(std::string_view text, const Context& ctx, const Domain& dom)
        : text_(text), ctx_(ctx), dom_(dom) {}

    Poly parse() {
        Poly f = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') ++line, col = 1;
            else ++col;
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\r' || text_[pos_] == '\n'))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Poly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Poly factor() {
        Poly base = atom();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= text_.size() || !isdigit((unsigned char)text_[pos_]))
                fail("expected nonnegative integer exponent after '^'");
            long e = integer_literal();
            if (e > 1'000'000) fail("exponent too large");
            return base.pow((unsigned)e);
        }
        return base;
    }

    long integer_literal() {
        size_t start = pos_;
        while (pos_ < text_.size() && isdigit((unsigned char)text_[pos_])) ++pos_;
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 18) fail("exponent too large");
        return std::stol(digits);
    }

    Poly atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Poly inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && isdigit((unsigned char)text_[pos_])) ++pos_;
            mpz_class value(std::string(text_.substr(start, pos_ - start)), 10);
            return Poly::constant(ctx_, dom_, mpq_class(value));
        }
        if (isalpha((unsigned char)c) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto idx = ctx_.index_of(name);
            if (!idx) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Poly::variable(ctx_, dom_, *idx);
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const Context& ctx_;
    const Domain& dom_;
    size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const Context& ctx, const Domain& dom) {
    return PolyParser(text, ctx, dom).parse();
}

}  // namespace diffpow
