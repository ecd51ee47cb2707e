#include <gtest/gtest.h>

#include <numeric>

#include "openbook/criteria.hpp"
#include "openbook/errors.hpp"

using namespace openbook;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kXYZW{"x", "y", "z", "w"};

MapGerm acampo() {
    return MapGerm::from_strings({"x*(z^2+w^2) + z*(x^2+y^2)", "y*(z^2+w^2) + w*(x^2+y^2)"}, kXYZW);
}

MapGerm brieskorn23() {
    const std::vector<std::string> zs{"z1", "z2"};
    return holomorphic_to_real(parse_gaussian_polynomial("z1^2 + z2^3", zs));
}

/// Brute-force oracle: every primitive (w, alpha) with w_j in [1, 6] and
/// alpha in [1, 40] such that each monomial has weighted degree alpha,
/// in lexicographic order.
std::vector<std::vector<std::int64_t>> brute_force_weights(const MapGerm& g) {
    std::vector<ExponentVector> monomials;
    for (const auto& P : g.components())
        for (const auto& [e, c] : P.terms()) monomials.push_back(e);
    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::int64_t> w(g.m(), 1);
    for (;;) {
        const auto degree = [&](const ExponentVector& e) {
            std::int64_t d = 0;
            for (std::size_t j = 0; j < e.size(); ++j) d += w[j] * e[j];
            return d;
        };
        const std::int64_t alpha = degree(monomials.front());
        bool ok = alpha >= 1 && alpha <= 40;
        for (const auto& e : monomials) ok = ok && degree(e) == alpha;
        if (ok) {
            std::int64_t gcd = alpha;
            for (auto v : w) gcd = std::gcd(gcd, v);
            if (gcd == 1) {
                auto sol = w;
                sol.push_back(alpha);
                found.push_back(sol);
            }
        }
        std::size_t k = g.m();
        while (k > 0 && w[k - 1] == 6) w[--k] = 1;
        if (k == 0) break;
        ++w[k - 1];
    }
    return found;
}

std::vector<std::int64_t> flatten(const WeightSystem& ws) {
    auto v = ws.weights;
    v.push_back(ws.degree);
    return v;
}

}  // namespace

TEST(DetectWeights, MatchesBruteForceOracle) {
    const std::vector<MapGerm> germs{acampo(), brieskorn23(), MapGerm::from_strings({"x^2 + y^3", "z^6"}, kXYZ),
                                     MapGerm::from_strings({"x*y", "z^2"}, kXYZ)};
    for (const auto& g : germs) {
        const auto oracle = brute_force_weights(g);
        const auto ws = detect_weights(g);
        ASSERT_TRUE(ws.has_value());
        ASSERT_FALSE(oracle.empty());
        EXPECT_EQ(flatten(*ws), oracle.front());
        if (!ws->ambiguous()) EXPECT_EQ(oracle.size(), 1u);
    }
}

TEST(DetectWeights, KnownSystems) {
    const auto a = detect_weights(acampo());
    ASSERT_TRUE(a);
    EXPECT_EQ(a->weights, (std::vector<std::int64_t>{1, 1, 1, 1}));
    EXPECT_EQ(a->degree, 3);
    EXPECT_FALSE(a->ambiguous());
    const auto b = detect_weights(brieskorn23());
    ASSERT_TRUE(b);
    EXPECT_EQ(b->weights, (std::vector<std::int64_t>{3, 3, 2, 2}));
    EXPECT_EQ(b->degree, 6);
}

TEST(DetectWeights, AmbiguousSolutionSpace) {
    const auto ws = detect_weights(MapGerm::from_strings({"x", "y"}, kXYZ));
    ASSERT_TRUE(ws);
    EXPECT_TRUE(ws->ambiguous());
    EXPECT_EQ(flatten(*ws), (std::vector<std::int64_t>{1, 1, 1, 1}));
    EXPECT_TRUE(weighted_certificate(MapGerm::from_strings({"x", "y"}, kXYZ), *ws).has_value());
}

TEST(DetectWeights, NotWeightedHomogeneous) {
    EXPECT_FALSE(detect_weights(MapGerm::from_strings({"y*(x^2+y^2+z^2) + x^2", "x"}, kXYZ)));
    EXPECT_FALSE(detect_weights(MapGerm::from_strings({"z*(x^2+y^2+z^2)", "y - x^3"}, kXYZ)));
    EXPECT_FALSE(detect_weights(MapGerm::from_strings({"x + x^2", "y"}, kXYZ)));
}

TEST(EulerIdentity, ExactChecks) {
    const MapGerm g = acampo();
    EXPECT_TRUE(verify_euler_identity(g, {{1, 1, 1, 1}, 3, 1}));
    EXPECT_FALSE(verify_euler_identity(g, {{1, 1, 1, 1}, 2, 1}));
    EXPECT_FALSE(verify_euler_identity(g, {{2, 1, 1, 1}, 3, 1}));
    EXPECT_THROW(verify_euler_identity(g, {{1, 1, 1}, 3, 1}), DimensionError);
}

TEST(FiberTangency, ProbeDirections) {
    const auto probes = tangency_probe_directions(3);
    ASSERT_EQ(probes.size(), 4u);
    EXPECT_EQ(probes[3].coords(), (std::vector<Rational>{1, 1, 1}));
    const MapGerm g = acampo();
    for (const auto& s : tangency_probe_directions(2)) EXPECT_TRUE(verify_fiber_tangency(g, {{1, 1, 1, 1}, 3, 1}, s));
    const ProjectiveDirection s({Rational(1), Rational(-7, 3)});
    EXPECT_TRUE(verify_fiber_tangency(g, {{1, 1, 1, 1}, 3, 1}, s));
}

TEST(WeightedCertificate, HoldsWithTag) {
    const auto ws = detect_weights(acampo());
    ASSERT_TRUE(ws);
    const auto cert = weighted_certificate(acampo(), *ws);
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->verdict, Verdict::holds);
    EXPECT_EQ(cert->certificate, std::string("theorem-4.1"));
}

TEST(WeightedCertificate, RejectsWrongWeights) {
    EXPECT_FALSE(weighted_certificate(acampo(), {{1, 1, 1, 1}, 4, 1}));
    EXPECT_FALSE(weighted_certificate(acampo(), {{1, 1, 1, 1}, 0, 1}));
}
