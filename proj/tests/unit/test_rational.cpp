#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "openbook/errors.hpp"
#include "openbook/rational.hpp"

using openbook::InputError;
using openbook::Rational;

TEST(Rational, CanonicalForm) {
    const Rational r(6, -4);
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(Rational(0, -5).denominator(), 1);
    EXPECT_TRUE(Rational(4, 2).is_integer());
    EXPECT_EQ(r.to_string(), "-3/2");
    EXPECT_EQ(Rational(7).to_string(), "7");
}

TEST(Rational, ZeroDenominatorThrows) {
    EXPECT_THROW(Rational(1, 0), InputError);
    EXPECT_THROW(Rational(1) / Rational(0), InputError);
}

TEST(Rational, Parse) {
    EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("-12"), Rational(-12));
    EXPECT_EQ(Rational::parse("+5/10"), Rational(1, 2));
    EXPECT_THROW(Rational::parse("1/0"), InputError);
    EXPECT_THROW(Rational::parse("1.5"), InputError);
    EXPECT_THROW(Rational::parse(""), InputError);
    EXPECT_THROW(Rational::parse("a/2"), InputError);
}

// Oracle: cross-multiplied 64-bit arithmetic on small operands.
TEST(Rational, ArithmeticMatchesIntegerOracle) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    for (int i = 0; i < 500; ++i) {
        const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        const Rational x(a, b), y(c, d);
        EXPECT_EQ(x + y, Rational(a * d + c * b, b * d));
        EXPECT_EQ(x - y, Rational(a * d - c * b, b * d));
        EXPECT_EQ(x * y, Rational(a * c, b * d));
        if (c != 0) EXPECT_EQ(x / y, Rational(a * d, b * c));
        EXPECT_EQ(x < y, a * d < c * b);
        EXPECT_EQ(x.sign(), (a > 0) - (a < 0));
    }
}

TEST(Rational, PowAbsAndStream) {
    EXPECT_EQ(Rational(-2, 3).pow(3), Rational(-8, 27));
    EXPECT_EQ(Rational(5).pow(0), Rational(1));
    EXPECT_EQ(Rational(-2, 3).abs(), Rational(2, 3));
    std::ostringstream s;
    s << Rational(-1, 4);
    EXPECT_EQ(s.str(), "-1/4");
    EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
}
