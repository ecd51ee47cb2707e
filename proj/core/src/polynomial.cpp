#include "openbook/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "openbook/errors.hpp"

namespace openbook {

namespace {

std::uint32_t degree_of(const ExponentVector& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
    if (a.nvars() != b.nvars())
        throw DimensionError("polynomial variable counts differ: " + std::to_string(a.nvars()) +
                             " vs " + std::to_string(b.nvars()));
}

void drop_zeros(Polynomial::TermMap& terms) {
    std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
}

double power(double base, std::uint32_t exponent) {
    double result = 1.0;
    while (exponent > 0) {
        if (exponent & 1u) result *= base;
        base *= base;
        exponent >>= 1u;
    }
    return result;
}

}  // namespace

bool GrlexDescending::operator()(const ExponentVector& a, const ExponentVector& b) const {
    const auto da = degree_of(a);
    const auto db = degree_of(b);
    if (da != db) return da > db;
    return a > b;
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {}

Polynomial::Polynomial(std::size_t nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
    for (const auto& [e, c] : terms_) {
        if (e.size() != nvars_)
            throw DimensionError("exponent vector length " + std::to_string(e.size()) +
                                 " does not match ring size " + std::to_string(nvars_));
    }
    drop_zeros(terms_);
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    TermMap t;
    if (!c.is_zero()) t.emplace(ExponentVector(nvars, 0), c);
    return Polynomial(nvars, std::move(t));
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionError("variable index out of range");
    ExponentVector e(nvars, 0);
    e[index] = 1;
    TermMap t;
    t.emplace(std::move(e), Rational(1));
    return Polynomial(nvars, std::move(t));
}

Polynomial Polynomial::monomial(const ExponentVector& exponents, const Rational& c) {
    TermMap t;
    t.emplace(exponents, c);
    return Polynomial(exponents.size(), std::move(t));
}

Rational Polynomial::coefficient(const ExponentVector& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(ExponentVector(nvars_, 0)); }

std::uint32_t Polynomial::total_degree() const {
    // Map order puts the highest total degree first.
    return terms_.empty() ? 0 : degree_of(terms_.begin()->first);
}

Polynomial Polynomial::operator-() const {
    TermMap t = terms_;
    for (auto& [e, c] : t) c = -c;
    return Polynomial(nvars_, std::move(t));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a, b);
    Polynomial::TermMap t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] += c;
    drop_zeros(t);
    return Polynomial(a.nvars_, std::move(t));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a, b);
    Polynomial::TermMap t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] -= c;
    drop_zeros(t);
    return Polynomial(a.nvars_, std::move(t));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_ring(a, b);
    Polynomial::TermMap t;
    ExponentVector e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            t[e] += ca * cb;
        }
    }
    drop_zeros(t);
    return Polynomial(a.nvars_, std::move(t));
}

Polynomial operator*(const Polynomial& a, const Rational& c) {
    if (c.is_zero()) return Polynomial(a.nvars_);
    Polynomial::TermMap t = a.terms_;
    for (auto& [e, coeff] : t) coeff *= c;
    return Polynomial(a.nvars_, std::move(t));
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent > 0) base = base * base;
    }
    return result;
}

std::string Polynomial::to_string(std::span<const std::string> var_names) const {
    if (var_names.size() != nvars_)
        throw DimensionError("variable name count does not match ring size");
    if (terms_.empty()) return "0";

    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool constant_monomial = degree_of(e) == 0;
        Rational magnitude = c.abs();
        if (first) {
            if (c.sign() < 0) os << '-';
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;

        bool need_star = false;
        if (constant_monomial || !magnitude.is_one()) {
            os << magnitude.to_string();
            need_star = true;
        }
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << var_names[i];
            if (e[i] > 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

std::string Polynomial::to_string() const {
    const auto names = default_var_names(nvars_);
    return to_string(names);
}

Polynomial arith(ArithKind kind, const Polynomial& a, const Polynomial& b) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
    }
    throw InputError("unknown arithmetic kind");
}

Polynomial scale(const Polynomial& a, const Rational& c) { return a * c; }

Polynomial differentiate(const Polynomial& p, std::size_t var_index) {
    if (var_index >= p.nvars())
        throw DimensionError("derivative index " + std::to_string(var_index) +
                             " out of range for " + std::to_string(p.nvars()) + " variables");
    Polynomial::TermMap t;
    for (const auto& [e, c] : p.terms()) {
        if (e[var_index] == 0) continue;
        ExponentVector d = e;
        d[var_index] -= 1;
        t[d] += c * Rational(static_cast<long>(e[var_index]));
    }
    return Polynomial(p.nvars(), std::move(t));
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
    if (point.size() != p.nvars())
        throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                             " coordinates, polynomial has " + std::to_string(p.nvars()) +
                             " variables");
    Rational sum;
    for (const auto& [e, c] : p.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term *= point[i].pow(e[i]);
        sum += term;
    }
    return sum;
}

double evaluate(const Polynomial& p, std::span<const double> point) {
    if (point.size() != p.nvars())
        throw DimensionError("evaluation point has " + std::to_string(point.size()) +
                             " coordinates, polynomial has " + std::to_string(p.nvars()) +
                             " variables");
    return CompiledPolynomial(p)(point);
}

std::set<std::int64_t> weighted_degree_profile(const Polynomial& p,
                                               std::span<const std::int64_t> weights) {
    if (weights.size() != p.nvars()) throw DimensionError("weight count does not match ring size");
    for (auto w : weights)
        if (w <= 0) throw InputError("weights must be positive integers");
    std::set<std::int64_t> out;
    for (const auto& [e, c] : p.terms()) {
        std::int64_t d = 0;
        for (std::size_t j = 0; j < e.size(); ++j) d += weights[j] * static_cast<std::int64_t>(e[j]);
        out.insert(d);
    }
    return out;
}

std::vector<std::string> default_var_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

void CompensatedSum::add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        compensation_ += (sum_ - t) + v;
    else
        compensation_ += (v - t) + sum_;
    sum_ = t;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : nvars_(p.nvars()) {
    terms_.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) {
        Term t{c.to_double(), {}};
        for (std::uint32_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t.factors.emplace_back(i, e[i]);
        terms_.push_back(std::move(t));
    }
}

double CompiledPolynomial::operator()(std::span<const double> point) const {
    CompensatedSum sum;
    for (const auto& t : terms_) {
        double v = t.coefficient;
        for (const auto& [var, exp] : t.factors) v *= power(point[var], exp);
        sum.add(v);
    }
    return sum.value();
}

}  // namespace openbook
