#include "openbook/rational.hpp"

#include <cctype>
#include <ostream>

#include "openbook/errors.hpp"

namespace openbook {

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw InputError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    const auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
        std::size_t i = 0;
        if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto to_mpz = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        return mpz_class(t, 10);
    };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw InputError("malformed rational literal '" + s + "'");
        return Rational(mpq_class(to_mpz(s)));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw InputError("malformed rational literal '" + s + "'");
    mpz_class d = to_mpz(den);
    if (d == 0) throw InputError("rational literal with zero denominator");
    return Rational(mpq_class(to_mpz(num), d));
}

std::string Rational::to_string() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& other) {
    value_ *= other.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& other) {
    if (other.is_zero()) throw InputError("division by zero rational");
    value_ /= other.value_;
    return *this;
}

Rational Rational::pow(unsigned exponent) const {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    return Rational(mpq_class(num, den));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace openbook
