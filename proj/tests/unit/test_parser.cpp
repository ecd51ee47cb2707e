#include <gtest/gtest.h>

#include "openbook/errors.hpp"
#include "openbook/polynomial.hpp"

using namespace openbook;

namespace {

const std::vector<std::string> kXY{"x", "y"};

std::size_t error_position(const std::string& text) {
    try {
        parse_polynomial(text, kXY);
    } catch (const ParseError& e) {
        return e.position();
    }
    ADD_FAILURE() << "no ParseError for '" << text << "'";
    return 0;
}

}  // namespace

TEST(Parser, Precedence) {
    EXPECT_EQ(parse_polynomial("-x^2", kXY), parse_polynomial("-(x^2)", kXY));
    EXPECT_EQ(parse_polynomial("2*x+3*x", kXY), parse_polynomial("5*x", kXY));
    EXPECT_EQ(parse_polynomial("(x+y)^2", kXY), parse_polynomial("x^2 + 2*x*y + y^2", kXY));
    EXPECT_EQ(parse_polynomial("x/2 + y/(1/3)", kXY), parse_polynomial("1/2*x + 3*y", kXY));
    EXPECT_EQ(parse_polynomial("x^0", kXY), parse_polynomial("1", kXY));
}

TEST(Parser, ErrorPositions) {
    EXPECT_EQ(error_position("x + w"), 4u);
    EXPECT_EQ(error_position("x + "), 4u);
    EXPECT_EQ(error_position("x ^ -1"), 4u);
    EXPECT_EQ(error_position("1.5*x"), 0u);
    EXPECT_EQ(error_position("x # y"), 2u);
    EXPECT_EQ(error_position(""), 0u);
}

TEST(Parser, RejectsNonPolynomialDivision) {
    EXPECT_THROW(parse_polynomial("1/x", kXY), ParseError);
    EXPECT_THROW(parse_polynomial("x/0", kXY), InputError);
    EXPECT_THROW(parse_polynomial("x^1234567", kXY), ParseError);
    EXPECT_THROW(parse_polynomial("(x + y", kXY), ParseError);
}
