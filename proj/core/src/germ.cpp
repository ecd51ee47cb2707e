#include "openbook/germ.hpp"

#include <algorithm>

#include "openbook/errors.hpp"

namespace openbook {

namespace {

void require_p2(const MapGerm& g, const char* what) {
    if (g.p() != 2)
        throw PreconditionError(std::string(what) + " is defined for p = 2 only (germ has p = " +
                                std::to_string(g.p()) +
                                "); use the numeric rank test for general p");
}

}  // namespace

MapGerm::MapGerm(std::vector<Polynomial> components, std::vector<std::string> var_names,
                 std::string name)
    : components_(std::move(components)), var_names_(std::move(var_names)), name_(std::move(name)) {
    const std::size_t m = var_names_.size();
    const std::size_t p = components_.size();
    if (p < 2) throw InputError("map germ needs at least 2 components");
    if (m <= p)
        throw InputError("map germ needs m > p (got m = " + std::to_string(m) +
                         ", p = " + std::to_string(p) + ")");
    for (std::size_t i = 0; i < m; ++i) {
        if (var_names_[i].empty()) throw InputError("empty variable name");
        for (std::size_t j = 0; j < i; ++j)
            if (var_names_[i] == var_names_[j])
                throw InputError("duplicate variable name '" + var_names_[i] + "'");
    }
    for (std::size_t i = 0; i < p; ++i) {
        if (components_[i].nvars() != m)
            throw DimensionError("component P" + std::to_string(i + 1) + " lives in " +
                                 std::to_string(components_[i].nvars()) + " variables, expected " +
                                 std::to_string(m));
        if (!components_[i].constant_term().is_zero())
            throw InputError("component P" + std::to_string(i + 1) +
                             " has a nonzero constant term (germ must map 0 to 0)");
    }
}

MapGerm MapGerm::from_strings(const std::vector<std::string>& components,
                              std::vector<std::string> var_names, std::string name) {
    std::vector<Polynomial> polys;
    polys.reserve(components.size());
    for (const auto& text : components) polys.push_back(parse_polynomial(text, var_names));
    return MapGerm(std::move(polys), std::move(var_names), std::move(name));
}

MapGerm MapGerm::scaled(const Rational& c) const {
    if (c.is_zero()) throw InputError("cannot scale a germ by zero");
    std::vector<Polynomial> comps;
    for (const auto& P : components_) comps.push_back(P * c);
    return MapGerm(std::move(comps), var_names_, name_);
}

std::vector<std::string> MapGerm::component_strings() const {
    std::vector<std::string> out;
    for (const auto& P : components_) out.push_back(P.to_string(var_names_));
    return out;
}

ProjectiveDirection::ProjectiveDirection(std::vector<Rational> coords) : coords_(std::move(coords)) {
    auto it = std::find_if(coords_.begin(), coords_.end(), [](const Rational& r) { return !r.is_zero(); });
    if (it == coords_.end()) throw InputError("projective direction with all coordinates zero");
    const Rational lead = *it;
    for (auto& c : coords_) c /= lead;
}

std::size_t ProjectiveDirection::chart() const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return i;
    return 0;  // unreachable: constructor rejects the zero vector
}

std::string to_string(FieldLabel label) {
    switch (label) {
        case FieldLabel::omega: return "omega";
        case FieldLabel::euler: return "euler";
        case FieldLabel::fiber_singular: return "fiber_singular";
    }
    return "unknown";
}

PolynomialMatrix jacobian(const MapGerm& g) {
    PolynomialMatrix J;
    J.reserve(g.p());
    for (const auto& P : g.components()) {
        std::vector<Polynomial> row;
        row.reserve(g.m());
        for (std::size_t j = 0; j < g.m(); ++j) row.push_back(differentiate(P, j));
        J.push_back(std::move(row));
    }
    return J;
}

SymbolicField omega(const MapGerm& g) {
    require_p2(g, "omega");
    const auto J = jacobian(g);
    const Polynomial& P = g.component(0);
    const Polynomial& Q = g.component(1);
    SymbolicField field{{}, FieldLabel::omega};
    for (std::size_t j = 0; j < g.m(); ++j) field.components.push_back(P * J[1][j] - Q * J[0][j]);
    return field;
}

std::vector<Polynomial> criterion_minors(const MapGerm& g) {
    const auto w = omega(g).components;
    const std::size_t m = g.m();
    std::vector<Polynomial> minors;
    minors.reserve(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i) {
        const Polynomial xi = Polynomial::variable(m, i);
        for (std::size_t j = i + 1; j < m; ++j) {
            const Polynomial xj = Polynomial::variable(m, j);
            minors.push_back(w[i] * xj - w[j] * xi);
        }
    }
    return minors;
}

std::vector<Polynomial> fiber_equations(const MapGerm& g, const ProjectiveDirection& s,
                                        std::size_t chart) {
    if (s.size() != g.p())
        throw DimensionError("direction has " + std::to_string(s.size()) +
                             " coordinates, germ has p = " + std::to_string(g.p()));
    if (chart >= g.p()) throw DimensionError("chart index out of range");
    const Rational& lead = s.coords()[chart];
    if (lead.is_zero())
        throw PreconditionError("direction has s_" + std::to_string(chart + 1) +
                                " = 0; it does not lie in the requested chart");
    std::vector<Polynomial> eqs;
    for (std::size_t j = 0; j < g.p(); ++j) {
        if (j == chart) continue;
        eqs.push_back(g.component(chart) * (s.coords()[j] / lead) - g.component(j));
    }
    return eqs;
}

std::vector<Polynomial> fiber_equations(const MapGerm& g, const ProjectiveDirection& s) {
    return fiber_equations(g, s, s.chart());
}

SymbolicField fiber_singular_equations(const MapGerm& g, const ProjectiveDirection& s) {
    require_p2(g, "fiber_singular_equations");
    if (s.size() != 2) throw DimensionError("direction must have 2 coordinates");
    const auto J = jacobian(g);
    const Rational& sc = s.coords()[0];
    const Rational& tc = s.coords()[1];
    SymbolicField field{{}, FieldLabel::fiber_singular};
    for (std::size_t j = 0; j < g.m(); ++j) field.components.push_back(J[0][j] * tc - J[1][j] * sc);
    return field;
}

SymbolicField euler_field(std::size_t m, std::span<const std::int64_t> weights) {
    if (weights.size() != m) throw DimensionError("weight count does not match variable count");
    SymbolicField field{{}, FieldLabel::euler};
    for (std::size_t j = 0; j < m; ++j)
        field.components.push_back(Polynomial::variable(m, j) * Rational(static_cast<long>(weights[j])));
    return field;
}

GaussianPolynomial parse_gaussian_polynomial(std::string_view text,
                                             std::span<const std::string> complex_vars) {
    std::vector<std::string> names(complex_vars.begin(), complex_vars.end());
    if (std::find(names.begin(), names.end(), "i") != names.end())
        throw InputError("'i' is reserved for the imaginary unit");
    names.push_back("i");
    const std::size_t n = complex_vars.size();
    const Polynomial raw = parse_polynomial(text, names);

    Polynomial::TermMap re, im;
    for (const auto& [e, c] : raw.terms()) {
        ExponentVector z(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
        switch (e[n] % 4) {
            case 0: re[z] += c; break;
            case 1: im[z] += c; break;
            case 2: re[z] -= c; break;
            case 3: im[z] -= c; break;
        }
    }
    return {Polynomial(n, std::move(re)), Polynomial(n, std::move(im))};
}

MapGerm holomorphic_to_real(const GaussianPolynomial& f,
                            std::optional<std::vector<std::string>> real_var_names,
                            std::string name) {
    const std::size_t n = f.re.nvars();
    if (f.im.nvars() != n) throw DimensionError("real and imaginary parts live in different rings");
    if (n < 2) throw InputError("need at least 2 complex variables so that m = 2n > p = 2");
    if (!f.re.constant_term().is_zero() || !f.im.constant_term().is_zero())
        throw InputError("holomorphic germ must vanish at the origin (nonzero constant term)");

    const std::size_t m = 2 * n;
    std::vector<std::string> names;
    if (real_var_names) {
        names = std::move(*real_var_names);
        if (names.size() != m) throw DimensionError("need 2n real variable names");
    } else {
        for (std::size_t j = 1; j <= n; ++j) {
            names.push_back("x" + std::to_string(j));
            names.push_back("y" + std::to_string(j));
        }
    }

    struct Complex {
        Polynomial re, im;
    };
    auto mul = [](const Complex& a, const Complex& b) {
        return Complex{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    };
    // z_j = x_j + i y_j and its powers, cached per (j, k).
    std::vector<std::vector<Complex>> powers(n);
    auto z_power = [&](std::size_t j, std::uint32_t k) -> const Complex& {
        auto& cache = powers[j];
        if (cache.empty())
            cache.push_back({Polynomial::constant(m, Rational(1)), Polynomial(m)});
        const Complex z{Polynomial::variable(m, 2 * j), Polynomial::variable(m, 2 * j + 1)};
        while (cache.size() <= k) cache.push_back(mul(cache.back(), z));
        return cache[k];
    };

    std::map<ExponentVector, std::pair<Rational, Rational>, GrlexDescending> coeffs;
    for (const auto& [e, c] : f.re.terms()) coeffs[e].first = c;
    for (const auto& [e, c] : f.im.terms()) coeffs[e].second = c;

    Complex total{Polynomial(m), Polynomial(m)};
    for (const auto& [e, c] : coeffs) {
        Complex term{Polynomial::constant(m, c.first), Polynomial::constant(m, c.second)};
        for (std::size_t j = 0; j < n; ++j)
            if (e[j] != 0) term = mul(term, z_power(j, e[j]));
        total.re = total.re + term.re;
        total.im = total.im + term.im;
    }
    return MapGerm({total.re, total.im}, std::move(names), std::move(name));
}

}  // namespace openbook
