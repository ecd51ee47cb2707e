#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "openbook/rational.hpp"

namespace openbook {

/// Exponents of one monomial; length equals the ring's variable count.
using ExponentVector = std::vector<std::uint32_t>;

/// Graded-lexicographic "greater first" ordering: higher total degree comes
/// first, ties broken lexicographically with x_0 > x_1 > ... . Used as the
/// map comparator so iteration order is the canonical print order.
struct GrlexDescending {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

/// Exact sparse multivariate polynomial over the rationals.
///
/// Canonical form: no zero coefficients, unique exponent vectors, terms kept
/// in graded-lex order. Equality is equality of term maps. Values are
/// immutable once constructed; arithmetic returns new polynomials.
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, Rational, GrlexDescending>;

    explicit Polynomial(std::size_t nvars);
    Polynomial(std::size_t nvars, TermMap terms);

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(const ExponentVector& exponents, const Rational& c);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of the given monomial (zero when absent).
    Rational coefficient(const ExponentVector& exponents) const;
    Rational constant_term() const;
    std::uint32_t total_degree() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Rational& c);
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    Polynomial pow(unsigned exponent) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    /// Canonical text: graded-lex order, explicit `*` and `^`, reparseable.
    std::string to_string(std::span<const std::string> var_names) const;
    /// Same, with default names x0, x1, ...
    std::string to_string() const;

private:
    std::size_t nvars_;
    TermMap terms_;
};

enum class ArithKind { add, sub, mul };

/// Binary ring operation; throws DimensionError on nvars mismatch.
Polynomial arith(ArithKind kind, const Polynomial& a, const Polynomial& b);
/// Scalar multiple.
Polynomial scale(const Polynomial& a, const Rational& c);

/// Exact partial derivative with respect to variable `var_index`.
Polynomial differentiate(const Polynomial& p, std::size_t var_index);

/// Exact evaluation at a rational point.
Rational evaluate(const Polynomial& p, std::span<const Rational> point);
/// Floating evaluation: per-term power-by-squaring, compensated summation.
double evaluate(const Polynomial& p, std::span<const double> point);

/// Set of weighted degrees sum_j w_j a_j over the monomials of p.
std::set<std::int64_t> weighted_degree_profile(const Polynomial& p,
                                               std::span<const std::int64_t> weights);

/// Parses an expression over the named variables into canonical form.
///
/// Grammar: integer/rational literals, variables, + - * ^ (non-negative
/// integer exponents), parentheses, and division by nonzero constants.
/// Throws ParseError carrying the byte offset of the problem.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> vars);

/// Default variable names x0 .. x{n-1}.
std::vector<std::string> default_var_names(std::size_t n);

/// Compensated (Neumaier) accumulator.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Floating-point image of a Polynomial for repeated evaluation.
class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const Polynomial& p);

    std::size_t nvars() const { return nvars_; }
    double operator()(std::span<const double> point) const;

private:
    struct Term {
        double coefficient;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (var, exponent)
    };
    std::size_t nvars_ = 0;
    std::vector<Term> terms_;
};

}  // namespace openbook
