// Exact weighted-homogeneity procedures.

#include <algorithm>
#include <set>

#include "openbook/criteria.hpp"
#include "openbook/errors.hpp"

namespace openbook {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Basis of the right nullspace of `a` (n columns), read off the reduced
/// row echelon form: one vector per free column.
std::vector<std::vector<Rational>> nullspace(RationalMatrix a, std::size_t n) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < a.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.size() && a[pivot][col].is_zero()) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[row], a[pivot]);
        const Rational inv = Rational(1) / a[row][col];
        for (auto& v : a[row]) v *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            const Rational factor = a[r][col];
            for (std::size_t c = 0; c < n; ++c) a[r][c] -= factor * a[row][c];
        }
        pivots.push_back(col);
        ++row;
    }

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<Rational> v(n);
        v[free] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Scales a strictly positive rational vector to the primitive integer
/// vector on the same ray.
std::vector<mpz_class> primitive_integer(const std::vector<Rational>& v) {
    mpz_class lcm = 1;
    for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
    std::vector<mpz_class> out;
    mpz_class gcd = 0;
    for (const auto& x : v) {
        mpz_class scaled = x.numerator() * (lcm / x.denominator());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_mpz_t());
        out.push_back(scaled);
    }
    for (auto& x : out) x /= gcd;
    return out;
}

bool strictly_positive(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.sign() > 0; });
}

std::optional<WeightSystem> to_weight_system(const std::vector<mpz_class>& v, std::size_t dim) {
    WeightSystem ws;
    ws.solution_dimension = dim;
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        if (!v[j].fits_slong_p()) return std::nullopt;
        ws.weights.push_back(v[j].get_si());
    }
    if (!v.back().fits_slong_p()) return std::nullopt;
    ws.degree = v.back().get_si();
    return ws;
}

bool is_identically_zero(const Polynomial& p) { return p.is_zero(); }

Polynomial euler_derivative(const Polynomial& f, const WeightSystem& ws) {
    Polynomial acc(f.nvars());
    for (std::size_t j = 0; j < f.nvars(); ++j) {
        acc = acc + Polynomial::variable(f.nvars(), j) * differentiate(f, j) *
                        Rational(static_cast<long>(ws.weights[j]));
    }
    return acc;
}

void require_weights_fit(const MapGerm& g, const WeightSystem& ws) {
    if (ws.weights.size() != g.m())
        throw DimensionError("weight system has " + std::to_string(ws.weights.size()) +
                             " weights, germ has m = " + std::to_string(g.m()));
}

constexpr int kCombinationBound = 4;
constexpr std::size_t kMaxEnumeratedDimension = 4;

}  // namespace

std::optional<WeightSystem> detect_weights(const MapGerm& g) {
    const std::size_t m = g.m();
    const std::size_t n = m + 1;  // unknowns (w_1..w_m, alpha)

    std::set<ExponentVector> monomials;
    for (const auto& P : g.components())
        for (const auto& [e, c] : P.terms()) monomials.insert(e);

    RationalMatrix a;
    for (const auto& e : monomials) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < m; ++j) row[j] = Rational(static_cast<long>(e[j]));
        row[m] = Rational(-1);
        a.push_back(std::move(row));
    }
    const auto basis = nullspace(std::move(a), n);
    if (basis.empty()) return std::nullopt;

    if (basis.size() == 1) {
        auto v = basis.front();
        if (!strictly_positive(v)) {
            for (auto& x : v) x = -x;
            if (!strictly_positive(v)) return std::nullopt;
        }
        return to_weight_system(primitive_integer(v), 1);
    }

    if (basis.size() > kMaxEnumeratedDimension) return std::nullopt;

    // Several independent solutions: search small integer combinations of the
    // echelon basis for the lexicographically least primitive positive point.
    std::optional<std::vector<mpz_class>> best;
    std::vector<int> coeffs(basis.size(), -kCombinationBound);
    for (;;) {
        std::vector<Rational> v(n);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (coeffs[b] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) v[j] += basis[b][j] * Rational(coeffs[b]);
        }
        if (strictly_positive(v)) {
            auto candidate = primitive_integer(v);
            if (!best || candidate < *best) best = std::move(candidate);
        }
        std::size_t k = 0;
        while (k < coeffs.size() && coeffs[k] == kCombinationBound) coeffs[k++] = -kCombinationBound;
        if (k == coeffs.size()) break;
        ++coeffs[k];
    }
    if (!best) return std::nullopt;
    return to_weight_system(*best, basis.size());
}

bool verify_euler_identity(const MapGerm& g, const WeightSystem& ws) {
    require_weights_fit(g, ws);
    for (const auto& P : g.components())
        if (!is_identically_zero(euler_derivative(P, ws) - P * Rational(static_cast<long>(ws.degree))))
            return false;
    return true;
}

bool verify_fiber_tangency(const MapGerm& g, const WeightSystem& ws, const ProjectiveDirection& s) {
    require_weights_fit(g, ws);
    for (const auto& f : fiber_equations(g, s))
        if (!is_identically_zero(euler_derivative(f, ws) - f * Rational(static_cast<long>(ws.degree))))
            return false;
    return true;
}

std::vector<ProjectiveDirection> tangency_probe_directions(std::size_t p) {
    std::vector<ProjectiveDirection> probes;
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<Rational> e(p);
        e[i] = Rational(1);
        probes.emplace_back(std::move(e));
    }
    probes.emplace_back(std::vector<Rational>(p, Rational(1)));
    return probes;
}

std::optional<CriterionReport> weighted_certificate(const MapGerm& g, const WeightSystem& ws) {
    require_weights_fit(g, ws);
    if (ws.degree <= 0) return std::nullopt;
    if (!verify_euler_identity(g, ws)) return std::nullopt;
    for (const auto& s : tangency_probe_directions(g.p()))
        if (!verify_fiber_tangency(g, ws, s)) return std::nullopt;

    // <gamma(x), x> = sum_j w_j x_j^2 must be a positive definite diagonal form.
    const auto gamma = euler_field(g.m(), ws.weights);
    Polynomial radial(g.m());
    for (std::size_t j = 0; j < g.m(); ++j)
        radial = radial + gamma.components[j] * Polynomial::variable(g.m(), j);
    if (radial.term_count() != g.m()) return std::nullopt;
    for (std::size_t j = 0; j < g.m(); ++j) {
        ExponentVector sq(g.m(), 0);
        sq[j] = 2;
        if (radial.coefficient(sq).sign() <= 0) return std::nullopt;
    }

    CriterionReport report;
    report.test = "weighted-certificate";
    report.verdict = Verdict::holds;
    report.certificate = kWeightedHomogeneousCertificate;
    return report;
}

}  // namespace openbook
