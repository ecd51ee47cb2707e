#pragma once

#include <functional>
#include <optional>

#include "openbook/numeric_germ.hpp"

namespace openbook {

/// Residual evaluated on the sphere; nullopt marks an inadmissible point
/// (inside the tube around V).
using SphereResidual = std::function<std::optional<Vec>(const Vec&)>;

struct RefineOptions {
    int max_steps = 200;
    /// Finite-difference step, relative to the sphere radius.
    double fd_step = 1e-7;
};

struct RefineResult {
    Vec x;
    double residual_norm = 0.0;
    int iterations = 0;
};

/// Levenberg-Marquardt minimization of |r(x)|^2 over the sphere |x| = eps.
/// Steps live in the tangent space and are retracted radially; the Jacobian
/// is taken by central differences along a tangent frame. Only steps that
/// decrease |r| and stay admissible are accepted, so the result is never
/// worse than the start.
RefineResult refine_on_sphere(const SphereResidual& residual, const Vec& x0, double eps,
                              const RefineOptions& options = {});

}  // namespace openbook
