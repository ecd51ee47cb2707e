#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "openbook/numeric_germ.hpp"
#include "openbook/refine.hpp"
#include "openbook/sphere_sampling.hpp"

using namespace openbook;

namespace {

MapGerm seade() { return MapGerm::from_strings({"z*(x^2+y^2+z^2)", "y - x^3"}, {"x", "y", "z"}); }

}  // namespace

TEST(NumericGerm, JacobianMatchesCentralDifferences) {
    const NumericGerm g(seade());
    const double h = 1e-6;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const Vec x = sphere_sample(3, 0.7, 3, 1, i);
        const Mat J = g.jacobian(x);
        for (Eigen::Index j = 0; j < 3; ++j) {
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const Vec fd = (g.value(xp) - g.value(xm)) / (2 * h);
            for (Eigen::Index r = 0; r < 2; ++r) EXPECT_NEAR(fd[r], J(r, j), 1e-8);
        }
    }
}

TEST(NumericGerm, OmegaMatchesJacobianFormula) {
    const NumericGerm g(seade());
    for (std::uint64_t i = 0; i < 50; ++i) {
        const Vec x = sphere_sample(3, 0.3, 4, 1, i);
        const Vec v = g.value(x);
        const Mat J = g.jacobian(x);
        const Vec direct = v[0] * J.row(1).transpose() - v[1] * J.row(0).transpose();
        EXPECT_LE((g.omega(x) - direct).norm(), 1e-14);
        const Vec w = g.omega(x);
        EXPECT_NEAR(g.minors(x)[0], w[0] * x[1] - w[1] * x[0], 1e-15);
    }
}

TEST(NumericGerm, DimensionChecks) {
    const NumericGerm g(seade());
    EXPECT_THROW(g.value(Vec::Zero(2)), std::invalid_argument);
}

TEST(SphereSampling, DeterministicAndOnSphere) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Vec a = sphere_sample(4, 0.25, 9, 2, i);
        EXPECT_NEAR(a.norm(), 0.25, 1e-15);
        EXPECT_EQ(a, sphere_sample(4, 0.25, 9, 2, i));
        EXPECT_NE(a, sphere_sample(4, 0.25, 10, 2, i));
    }
    EXPECT_NE(stream_seed(0, 0, 1), stream_seed(0, 1, 0));
}

TEST(SphereSampling, ParallelForCoversEveryIndexAndRethrows) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
    EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                     if (i == 7) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(TangentBasis, OrthonormalAndOrthogonalToPoint) {
    const Vec x = sphere_sample(5, 2.0, 1, 1, 1);
    const Mat B = tangent_basis(x);
    ASSERT_EQ(B.cols(), 4);
    EXPECT_LE((B.transpose() * B - Mat::Identity(4, 4)).norm(), 1e-14);
    EXPECT_LE((B.transpose() * x).norm(), 1e-14);
}

TEST(Refine, ReachesKnownMinimumOnSphere) {
    // Residual x - e1 restricted to the unit sphere is minimized at e1.
    Vec target = Vec::Zero(3);
    target[0] = 1.0;
    const SphereResidual r = [&](const Vec& x) -> std::optional<Vec> { return Vec(x - target); };
    const RefineResult res = refine_on_sphere(r, sphere_sample(3, 1.0, 0, 0, 3), 1.0);
    EXPECT_LE((res.x - target).norm(), 1e-8);
    EXPECT_NEAR(res.x.norm(), 1.0, 1e-15);
}

TEST(Refine, NeverWorseThanStart) {
    const SphereResidual r = [](const Vec& x) -> std::optional<Vec> {
        if (x[2] > 0.9) return std::nullopt;  // inadmissible cap
        Vec out(1);
        out[0] = x[2] - 0.95;
        return out;
    };
    Vec x0(3);
    x0 << 0.6, 0.0, 0.8;
    const double start = std::abs(x0[2] - 0.95);
    const RefineResult res = refine_on_sphere(r, x0, 1.0);
    EXPECT_LE(res.residual_norm, start);
    EXPECT_LE(res.x[2], 0.9);
}
