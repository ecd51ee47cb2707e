#include "openbook/numeric_germ.hpp"

#include "openbook/errors.hpp"

namespace openbook {

namespace {

std::span<const double> as_span(const Vec& x) { return {x.data(), static_cast<std::size_t>(x.size())}; }

void require_size(const Vec& x, std::size_t m) {
    if (static_cast<std::size_t>(x.size()) != m)
        throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                             std::to_string(m));
}

}  // namespace

NumericGerm::NumericGerm(const MapGerm& germ) : germ_(germ) {
    for (const auto& P : germ_.components()) components_.emplace_back(P);
    for (const auto& row : openbook::jacobian(germ_)) {
        std::vector<CompiledPolynomial> compiled;
        for (const auto& entry : row) compiled.emplace_back(entry);
        jacobian_.push_back(std::move(compiled));
    }
    if (germ_.p() == 2) {
        for (const auto& c : openbook::omega(germ_).components) omega_.emplace_back(c);
        for (const auto& c : criterion_minors(germ_)) minors_.emplace_back(c);
    }
}

Vec NumericGerm::value(const Vec& x) const {
    require_size(x, m());
    Vec out(p());
    for (std::size_t i = 0; i < p(); ++i) out[i] = components_[i](as_span(x));
    return out;
}

Mat NumericGerm::jacobian(const Vec& x) const {
    require_size(x, m());
    Mat J(p(), m());
    for (std::size_t i = 0; i < p(); ++i)
        for (std::size_t j = 0; j < m(); ++j) J(i, j) = jacobian_[i][j](as_span(x));
    return J;
}

Vec NumericGerm::omega(const Vec& x) const {
    if (!has_omega()) throw PreconditionError("omega is defined for p = 2 only");
    require_size(x, m());
    Vec out(m());
    for (std::size_t j = 0; j < m(); ++j) out[j] = omega_[j](as_span(x));
    return out;
}

Vec NumericGerm::minors(const Vec& x) const {
    if (!has_omega()) throw PreconditionError("criterion minors are defined for p = 2 only");
    require_size(x, m());
    Vec out(minors_.size());
    for (std::size_t k = 0; k < minors_.size(); ++k) out[k] = minors_[k](as_span(x));
    return out;
}

Mat tangent_basis(const Vec& x) {
    const Eigen::Index m = x.size();
    Eigen::HouseholderQR<Mat> qr(x.normalized());
    Mat Q = qr.householderQ() * Mat::Identity(m, m);
    return Q.rightCols(m - 1);
}

Mat complement_basis(const Vec& u) { return tangent_basis(u); }

Vec retract(const Vec& x, double eps) { return x * (eps / x.norm()); }

}  // namespace openbook
