#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "openbook/germ.hpp"

namespace openbook {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Floating-point evaluator for a MapGerm and the symbolic objects derived
/// from it. Built once, then read-only (safe for concurrent use).
class NumericGerm {
public:
    explicit NumericGerm(const MapGerm& germ);

    const MapGerm& germ() const { return germ_; }
    std::size_t m() const { return germ_.m(); }
    std::size_t p() const { return germ_.p(); }
    bool has_omega() const { return germ_.p() == 2; }

    Vec value(const Vec& x) const;
    /// p x m matrix, row i = grad P_i(x).
    Mat jacobian(const Vec& x) const;
    /// omega(x) from the expanded symbolic field (p = 2).
    Vec omega(const Vec& x) const;
    /// Criterion minors omega_i x_j - omega_j x_i from their symbolic form (p = 2).
    Vec minors(const Vec& x) const;

private:
    MapGerm germ_;
    std::vector<CompiledPolynomial> components_;
    std::vector<std::vector<CompiledPolynomial>> jacobian_;
    std::vector<CompiledPolynomial> omega_;
    std::vector<CompiledPolynomial> minors_;
};

/// Orthonormal basis (m x (m-1)) of the tangent space x^perp of a sphere.
Mat tangent_basis(const Vec& x);

/// Orthonormal basis (p x (p-1)) of u^perp for a unit vector u.
Mat complement_basis(const Vec& u);

/// Radial retraction onto the sphere of radius eps.
Vec retract(const Vec& x, double eps);

}  // namespace openbook
