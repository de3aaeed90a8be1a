// Recursive-descent parser for polynomial text.

#include <algorithm>
#include <cctype>
#include <limits>

#include "gsds/polynomial.hpp"

namespace gsds {

namespace {

class PolyParser {
  public:
    PolyParser(std::string_view text, std::size_t n_vars, const Field &field)
        : text_(text), n_vars_(n_vars), field_(field) {}

    Polynomial parse() {
        skip_space();
        if (at_end()) {
            throw ParseError("empty polynomial", pos_);
        }
        Polynomial p = expr();
        skip_space();
        if (!at_end()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return p;
    }

  private:
    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            skip_space();
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skip_space();
            if (!accept('*')) {
                return acc;
            }
            acc = acc * factor();
        }
    }

    Polynomial factor() {
        skip_space();
        if (accept('-')) {
            return -factor();
        }
        Polynomial base = primary();
        skip_space();
        if (accept('^')) {
            skip_space();
            if (peek() == '-') {
                throw ParseError("negative exponent", pos_);
            }
            const std::size_t at = pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                throw ParseError("expected exponent", at);
            }
            return base.pow(exponent());
        }
        return base;
    }

    Polynomial primary() {
        skip_space();
        if (at_end()) {
            throw ParseError("unexpected end of input", pos_);
        }
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            skip_space();
            if (!accept(')')) {
                throw ParseError("expected ')'", pos_);
            }
            return inner;
        }
        if (c == 'x') {
            const std::size_t at = pos_;
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                throw ParseError("expected variable index after 'x'", pos_);
            }
            const unsigned long long var = index();
            if (var < 1 || var > n_vars_) {
                throw ParseError("variable index " + std::to_string(var) + " out of range 1.." +
                                     std::to_string(n_vars_),
                                 at);
            }
            return Polynomial::variable(field_, n_vars_, static_cast<std::size_t>(var - 1));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Polynomial::constant(field_, n_vars_, literal());
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    // Decimal exponent. Values too large for 64 bits are kept in the same
    // residue class mod q-1 (and positive), which is all x^q = x needs.
    unsigned long long exponent() {
        unsigned long long v = 0;
        constexpr unsigned long long cap = std::numeric_limits<unsigned long long>::max() / 20;
        const unsigned long long period = field_.order() - 1;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v >= cap) {
                v = (v - 1) % period + 1 + period;
            }
            v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    unsigned long long index() {
        unsigned long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = std::min<unsigned long long>(v * 10 + static_cast<unsigned>(text_[pos_] - '0'),
                                             std::numeric_limits<unsigned>::max());
            ++pos_;
        }
        return v;
    }

    Elem literal() {
        const std::size_t at = pos_;
        if (field_.kind() == FieldKind::gf4) {
            unsigned long long v = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                v = std::min<unsigned long long>(v * 10 + static_cast<unsigned>(text_[pos_] - '0'), 1000);
                ++pos_;
            }
            if (v > 3) {
                throw ParseError("GF(4) literal must be an element code 0..3", at);
            }
            return static_cast<Elem>(v);
        }
        unsigned long long r = 0;
        const unsigned p = field_.order();
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            r = (r * 10 + static_cast<unsigned>(text_[pos_] - '0')) % p;
            ++pos_;
        }
        return static_cast<Elem>(r);
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view text_;
    std::size_t n_vars_;
    const Field &field_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_poly(std::string_view text, std::size_t n_vars, const Field &field) {
    return PolyParser(text, n_vars, field).parse();
}

} // namespace gsds
