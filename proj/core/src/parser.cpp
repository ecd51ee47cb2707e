#include <cctype>
#include <limits>
#include <optional>

#include "openbook/errors.hpp"
#include "openbook/polynomial.hpp"

namespace openbook {

namespace {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::span<const std::string> vars)
        : text_(text), vars_(vars) {}

    Polynomial parse() {
        skip_space();
        if (at_end()) throw ParseError("empty expression", pos_);
        Polynomial result = expression();
        skip_space();
        if (!at_end()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return result;
    }

private:
    std::string_view text_;
    std::span<const std::string> vars_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expression() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            skip_space();
            const std::size_t op_pos = pos_;
            if (accept('*')) {
                acc = acc * unary();
            } else if (accept('/')) {
                const std::size_t divisor_pos = pos_;
                Polynomial divisor = unary();
                if (divisor.total_degree() != 0 || divisor.is_zero()) {
                    throw ParseError(divisor.is_zero() ? "division by zero"
                                                       : "division by a non-constant expression",
                                     divisor.is_zero() ? op_pos : divisor_pos);
                }
                acc = acc * (Rational(1) / divisor.constant_term());
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (!accept('^')) return base;
        skip_space();
        const std::size_t exp_pos = pos_;
        bool parenthesized = accept('(');
        skip_space();
        if (peek() == '-') throw ParseError("negative exponent", pos_);
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("exponent must be a non-negative integer literal", exp_pos);
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.' || peek() == '/')
            throw ParseError("non-integer exponent", exp_pos);
        const std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 6) throw ParseError("exponent too large", exp_pos);
        const unsigned exponent = static_cast<unsigned>(std::stoul(digits));
        if (parenthesized && !accept(')')) throw ParseError("expected ')'", pos_);
        return base.pow(exponent);
    }

    Polynomial primary() {
        skip_space();
        const std::size_t start = pos_;
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial inner = expression();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (peek() == '.' || peek() == 'e' || peek() == 'E')
                throw ParseError("floating-point literals are not supported", start);
            return Polynomial::constant(vars_.size(),
                                        Rational::parse(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
            throw ParseError("unknown identifier '" + std::string(name) + "'", start);
        }
        if (at_end()) throw ParseError("unexpected end of expression", pos_);
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> vars) {
    if (vars.empty()) throw InputError("polynomial ring needs at least one variable");
    return ExpressionParser(text, vars).parse();
}

}  // namespace openbook
