#include "openbook/refine.hpp"

#include <cmath>
#include <limits>

namespace openbook {

RefineResult refine_on_sphere(const SphereResidual& residual, const Vec& x0, double eps,
                              const RefineOptions& options) {
    RefineResult out{retract(x0, eps), std::numeric_limits<double>::infinity(), 0};
    auto r = residual(out.x);
    if (!r) return out;
    out.residual_norm = r->norm();

    const double h = options.fd_step * eps;
    double mu = 1e-3;
    const Eigen::Index k = r->size();

    for (int step = 0; step < options.max_steps && out.residual_norm > 0.0; ++step) {
        const Mat B = tangent_basis(out.x);
        const Eigen::Index d = B.cols();
        Mat J(k, d);
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto plus = residual(retract(out.x + h * B.col(c), eps));
            const auto minus = residual(retract(out.x - h * B.col(c), eps));
            if (plus && minus)
                J.col(c) = (*plus - *minus) / (2 * h);
            else if (plus)
                J.col(c) = (*plus - *r) / h;
            else if (minus)
                J.col(c) = (*r - *minus) / h;
            else
                J.col(c).setZero();
        }
        const Mat A = J.transpose() * J;
        const Vec g = J.transpose() * *r;
        const double floor = 1e-14 * std::max(A.diagonal().maxCoeff(), std::numeric_limits<double>::min());

        bool accepted = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Mat damped = A;
            for (Eigen::Index i = 0; i < d; ++i) damped(i, i) += mu * A(i, i) + floor;
            const Vec delta = damped.ldlt().solve(-g);
            if (!delta.allFinite()) {
                mu *= 8;
                continue;
            }
            const Vec candidate = retract(out.x + B * delta, eps);
            const auto rc = residual(candidate);
            if (rc && rc->allFinite() && rc->norm() < out.residual_norm) {
                out.x = candidate;
                r = rc;
                out.residual_norm = rc->norm();
                mu = std::max(mu / 3, 1e-12);
                accepted = true;
                break;
            }
            mu *= 4;
        }
        out.iterations = step + 1;
        if (!accepted) break;
    }
    return out;
}

}  // namespace openbook
