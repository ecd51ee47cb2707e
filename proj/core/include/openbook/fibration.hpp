#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "openbook/criteria.hpp"
#include "openbook/numeric_germ.hpp"

namespace openbook {

/// Point of the sphere of radius `radius`, re-projected after every update.
struct SpherePoint {
    Vec coords;
    double radius = 0.0;
};

struct LinkConfig {
    std::size_t starts = 64;
    std::uint64_t seed = 0;
    int max_iter = 100;
    /// Converged points satisfy |psi(x)| <= link_tol.
    double link_tol = 1e-12;
    /// Relative to eps; stored points are farther apart than this.
    double dedupe_radius = 1e-6;
};

struct LinkSample {
    std::vector<SpherePoint> points;
    /// Single-linkage clusters of converged points at twice the dedupe radius.
    std::size_t component_count_estimate = 0;
};

struct TraceConfig {
    /// Arc-length step; 0 means eps / 200.
    double step = 0.0;
    double newton_tol = 1e-12;
    double page_tol = 1e-8;
    std::size_t max_points = 10000;
    std::size_t sweep_steps = 720;
    /// Page tracing stops at |psi| < trace_tube * scale.
    double trace_tube = 1e-4;
    /// Transport steps entering |psi| < sweep_tube * scale are halved.
    double sweep_tube = 1e-7;
    int max_bisections = 10;
    int newton_iter = 30;
    /// Number of intermediate page snapshots kept by sweep_pages.
    std::size_t snapshots = 8;
    std::uint64_t seed = 0;

    double step_for(double eps) const { return step > 0.0 ? step : eps / 200.0; }
    /// Throws InputError on non-positive values.
    void validate() const;
};

struct PageCloud {
    /// Unit vector s in S^{p-1}.
    Vec direction;
    std::vector<SpherePoint> points;
    /// |psi(x)/|psi(x)| - s| per point.
    std::vector<double> residuals;
    bool closed = false;
    bool truncated = false;
    /// Why each traced branch stopped ("tube", "closed", "stalled", "max_points").
    std::vector<std::string> end_reasons;
};

struct FiberProjection {
    std::optional<SpherePoint> point;
    int iterations = 0;
    double residual = 0.0;
    /// Empty on success, otherwise "diverged", "tube" or "opposite".
    std::string failure;
};

struct SweepResult {
    std::vector<double> angles;
    /// Transported page at each recorded angle; the last entry is the full loop.
    std::vector<PageCloud> clouds;
    /// max_k |psi_hat(x_k(2 pi)) - s(theta_0)|.
    double closure_residual = 0.0;
    /// max over points and angle steps of the residual to s(theta).
    double max_residual = 0.0;
    /// Transport steps that had to be subdivided near the tube.
    std::size_t halvings = 0;
};

/// Unit direction (cos theta, sin theta).
Vec direction_at(double theta);

/// |psi(x)/|psi(x)| - s|.
double direction_residual(const NumericGerm& g, const Vec& x, const Vec& s);

/// Multistart Gauss-Newton on {psi = 0, |x| = eps}; an empty result is
/// legitimate when the link is empty.
LinkSample sample_link(const MapGerm& g, double eps, const LinkConfig& cfg = {});

/// Newton iteration for psi/|psi| = s on the sphere through x0.
FiberProjection project_to_fiber(const NumericGerm& g, const Vec& s, const SpherePoint& x0,
                                 double tube_floor, const TraceConfig& cfg = {});
FiberProjection project_to_fiber(const MapGerm& g, const Vec& s, const SpherePoint& x0,
                                 const TraceConfig& cfg = {});

/// Predictor-corrector continuation of the page over s. For m - p = 1 this is
/// a curve traced in both directions until it closes or reaches the tube
/// around the link; otherwise a point net over the page.
PageCloud trace_page(const MapGerm& g, double eps, const Vec& s, const TraceConfig& cfg = {});

/// Transports the page over s(theta0) once around the base circle
/// (counterclockwise) along the minimal-norm lift of d/dtheta, using RK4
/// with cfg.sweep_steps steps. Requires p = 2 and HOLDS evidence.
SweepResult sweep_pages(const MapGerm& g, double eps, Verdict evidence, const TraceConfig& cfg = {},
                        double theta0 = 0.0);

/// Same, starting from a given page.
SweepResult sweep_page(const MapGerm& g, double eps, const PageCloud& start, const TraceConfig& cfg = {});

}  // namespace openbook
