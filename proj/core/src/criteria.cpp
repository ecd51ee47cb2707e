#include "openbook/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "openbook/errors.hpp"
#include "openbook/refine.hpp"
#include "openbook/sphere_sampling.hpp"

namespace openbook {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "HOLDS";
        case Verdict::fails: return "FAILS";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

Verdict verdict_from_string(const std::string& text) {
    if (text == "HOLDS") return Verdict::holds;
    if (text == "FAILS") return Verdict::fails;
    if (text == "INCONCLUSIVE") return Verdict::inconclusive;
    throw InputError("unknown verdict '" + text + "'");
}

std::vector<double> SamplerConfig::geometric_radii(double eps0, double ratio, int count) {
    std::vector<double> radii;
    // Dividing by powers of 1/ratio keeps decimal schedules such as 0.1^k exact.
    const double inverse = 1.0 / ratio;
    for (int k = 0; k < count; ++k) radii.push_back(eps0 / std::pow(inverse, k));
    return radii;
}

void SamplerConfig::validate() const {
    if (samples_per_sphere == 0) throw InputError("samples_per_sphere must be positive");
    if (radii.empty()) throw InputError("radius schedule is empty");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 0) || !std::isfinite(radii[k])) throw InputError("radii must be positive");
        if (k > 0 && !(radii[k] < radii[k - 1]))
            throw InputError("radius schedule must be strictly decreasing");
    }
    if (!(tube_delta >= 0 && tube_delta < 1)) throw InputError("tube_delta must lie in [0, 1)");
    if (refine_steps < 0) throw InputError("refine_steps must be non-negative");
    if (!(fail_threshold >= 0 && fail_threshold < hold_threshold && hold_threshold <= 1))
        throw InputError("thresholds must satisfy 0 <= fail < hold <= 1");
    if (!(icp_hold_threshold > fail_threshold)) throw InputError("icp hold threshold must exceed the fail threshold");
    if (!(witness_tolerance > 0)) throw InputError("witness tolerance must be positive");
}

// ---- pointwise margins ----------------------------------------------------

double omega_margin(const NumericGerm& g, const Vec& x) {
    const Vec w = g.omega(x);
    const double wn = w.norm();
    const double xn = x.norm();
    if (wn == 0.0 || xn == 0.0) return 0.0;
    const double denom = wn * xn;
    const double sin2 = std::min(1.0, g.minors(x).squaredNorm() / (denom * denom));
    const double cos = std::min(1.0, std::abs(w.dot(x)) / denom);
    return std::clamp(sin2 / (1.0 + cos), 0.0, 1.0);
}

namespace {

/// Differential of psi/|psi| at x (p x m); psi(x) must be nonzero.
Mat normalized_differential(const Vec& psi, const Mat& J) {
    const double n = psi.norm();
    const Vec u = psi / n;
    const Eigen::Index p = psi.size();
    return (Mat::Identity(p, p) - u * u.transpose()) * J / n;
}

Vec singular_values(const Mat& A) { return Eigen::JacobiSVD<Mat>(A).singularValues(); }

}  // namespace

double rank_margin(const NumericGerm& g, const Vec& x) {
    const Vec psi = g.value(x);
    if (psi.norm() == 0.0) throw PreconditionError("rank margin is undefined on V");
    const Mat A = normalized_differential(psi, g.jacobian(x));
    const Vec xh = x.normalized();
    const Eigen::Index m = x.size();
    const Mat AT = A * (Mat::Identity(m, m) - xh * xh.transpose());
    const Eigen::Index k = static_cast<Eigen::Index>(g.p()) - 2;  // index of sigma_{p-1}
    const Vec full = singular_values(A);
    const Vec restricted = singular_values(AT);
    if (!(full[k] > std::numeric_limits<double>::min()) ||
        full[k] <= 1e-14 * full[0])
        return 0.0;
    return std::clamp(restricted[k] / full[k], 0.0, 1.0);
}

double jacobian_rank_ratio(const NumericGerm& g, const Vec& x) {
    Mat J = g.jacobian(x);
    for (Eigen::Index i = 0; i < J.rows(); ++i) {
        const double n = J.row(i).norm();
        if (n == 0.0) return 0.0;
        J.row(i) /= n;
    }
    const Vec s = singular_values(J);
    return std::clamp(s[s.size() - 1] / s[0], 0.0, 1.0);
}

// ---- sphere scans -----------------------------------------------------------

namespace {

using MarginFn = std::function<double(const Vec&)>;
using ResidualFn = std::function<Vec(const Vec&)>;

struct ScanSpec {
    std::string test;
    MarginFn margin;
    ResidualFn residual;
    double hold_threshold;
    double fail_threshold;
    bool exclude_tube = true;
};

struct RefinedPoint {
    Vec x;
    double margin;
    double residual;
};

struct RadiusScan {
    RadiusTrace trace;
    std::vector<RefinedPoint> refined;
    std::vector<SampleRecord> samples;
    std::vector<std::pair<Vec, double>> raw_witnesses;  // (point, margin) of raw samples below fail
};

RadiusScan scan_radius(const NumericGerm& g, const SamplerConfig& cfg, const ScanSpec& spec,
                       std::size_t radius_index) {
    const double eps = cfg.radii[radius_index];
    const std::size_t n = cfg.samples_per_sphere;
    const std::size_t m = g.m();

    std::vector<Vec> points(n);
    std::vector<double> psi_norm(n);
    parallel_for(n, [&](std::size_t i) {
        points[i] = sphere_sample(m, eps, cfg.seed, radius_index, i);
        psi_norm[i] = g.value(points[i]).norm();
    });
    const double scale = *std::max_element(psi_norm.begin(), psi_norm.end());
    const double tube = spec.exclude_tube ? cfg.tube_delta * scale : 0.0;
    auto admissible = [&](const Vec& x) {
        return !spec.exclude_tube || (scale > 0.0 && g.value(x).norm() >= tube);
    };

    std::vector<std::optional<double>> margins(n);
    parallel_for(n, [&](std::size_t i) {
        if (!spec.exclude_tube || (scale > 0.0 && psi_norm[i] >= tube)) margins[i] = spec.margin(points[i]);
    });

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
        if (margins[i]) order.push_back(i);
    if (order.empty())
        throw NumericError(spec.test + ": every sample on the sphere of radius " + std::to_string(eps) +
                           " fell inside the tube around V");
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return *margins[a] < *margins[b]; });

    RadiusScan out;
    out.trace.epsilon = eps;
    out.trace.samples_used = order.size();
    out.trace.excluded = n - order.size();
    out.trace.min_margin = *margins[order.front()];
    out.trace.argmin = points[order.front()];
    for (std::size_t i : order) {
        if (*margins[i] > spec.fail_threshold) break;
        out.raw_witnesses.emplace_back(points[i], *margins[i]);
    }
    if (cfg.keep_samples) {
        out.samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.samples.push_back({radius_index, i, points[i], margins[i]});
    }

    const std::size_t seeds = std::min(cfg.refine_seeds, order.size());
    out.refined.resize(seeds);
    const SphereResidual residual = [&](const Vec& x) -> std::optional<Vec> {
        if (!admissible(x)) return std::nullopt;
        Vec r = spec.residual(x);
        if (!r.allFinite()) return std::nullopt;
        return r;
    };
    RefineOptions options;
    options.max_steps = cfg.refine_steps;
    parallel_for(seeds, [&](std::size_t s) {
        const RefineResult rr = refine_on_sphere(residual, points[order[s]], eps, options);
        out.refined[s] = {rr.x, spec.margin(rr.x), rr.residual_norm};
    });
    for (const auto& rp : out.refined) {
        if (rp.margin < out.trace.min_margin) {
            out.trace.min_margin = rp.margin;
            out.trace.argmin = rp.x;
        }
    }
    return out;
}

bool near_any(const std::vector<Witness>& list, std::size_t radius_index, const Vec& x, double radius) {
    return std::any_of(list.begin(), list.end(), [&](const Witness& w) {
        return w.radius_index == radius_index && (w.point - x).norm() <= radius;
    });
}

Verdict decide(const std::vector<RadiusTrace>& trace, double hold, double fail) {
    const bool all_hold = std::all_of(trace.begin(), trace.end(),
                                      [&](const RadiusTrace& t) { return t.min_margin >= hold; });
    const bool all_fail = std::all_of(trace.begin(), trace.end(),
                                      [&](const RadiusTrace& t) { return t.min_margin <= fail; });
    if (all_hold) return Verdict::holds;
    if (all_fail) return Verdict::fails;
    return Verdict::inconclusive;
}

std::optional<double> lambda_at(const NumericGerm& g, const Vec& x) {
    if (!g.has_omega()) return std::nullopt;
    return g.omega(x).dot(x) / x.squaredNorm();
}

CriterionReport run_scan(const NumericGerm& g, const SamplerConfig& cfg, const ScanSpec& spec) {
    cfg.validate();
    CriterionReport report;
    report.test = spec.test;
    report.config = cfg;
    for (std::size_t k = 0; k < cfg.radii.size(); ++k) {
        RadiusScan scan = scan_radius(g, cfg, spec, k);
        const double eps = scan.trace.epsilon;
        const double dedupe = 1e-6 * eps;
        for (const auto& rp : scan.refined) {
            if (rp.margin > spec.fail_threshold || near_any(report.witnesses, k, rp.x, dedupe)) continue;
            report.witnesses.push_back({k, eps, rp.x, rp.margin, lambda_at(g, rp.x)});
        }
        for (const auto& [x, margin] : scan.raw_witnesses) {
            if (near_any(report.witnesses, k, x, dedupe)) continue;
            report.witnesses.push_back({k, eps, x, margin, lambda_at(g, x)});
        }
        report.margin_trace.push_back(std::move(scan.trace));
        std::move(scan.samples.begin(), scan.samples.end(), std::back_inserter(report.samples));
    }
    report.verdict = decide(report.margin_trace, spec.hold_threshold, spec.fail_threshold);
    return report;
}

void require_p2(const MapGerm& g, const char* what) {
    if (g.p() != 2)
        throw PreconditionError(std::string(what) + " needs p = 2; use submersion_rank_test for p = " +
                                std::to_string(g.p()));
}

ScanSpec omega_spec(const NumericGerm& ng, const SamplerConfig& cfg) {
    ScanSpec spec;
    spec.test = "submersion";
    spec.margin = [&ng](const Vec& x) { return omega_margin(ng, x); };
    spec.residual = [&ng](const Vec& x) -> Vec {
        const double denom = ng.omega(x).norm() * x.norm();
        const Vec minors = ng.minors(x);
        if (denom == 0.0) return Vec::Zero(minors.size());
        return minors / denom;
    };
    spec.hold_threshold = cfg.hold_threshold;
    spec.fail_threshold = cfg.fail_threshold;
    return spec;
}

}  // namespace

CriterionReport submersion_test(const MapGerm& g, const SamplerConfig& cfg) {
    require_p2(g, "submersion_test");
    const NumericGerm ng(g);
    return run_scan(ng, cfg, omega_spec(ng, cfg));
}

CriterionReport submersion_rank_test(const MapGerm& g, const SamplerConfig& cfg) {
    const NumericGerm ng(g);
    ScanSpec spec;
    spec.test = "submersion-rank";
    spec.margin = [&ng](const Vec& x) { return rank_margin(ng, x); };
    // Distance from x/|x| to the row space of d(psi/|psi|): zero exactly where
    // the sphere is tangent to the fiber.
    spec.residual = [&ng](const Vec& x) -> Vec {
        const Vec psi = ng.value(x);
        const Vec u = psi.normalized();
        const Mat rows = complement_basis(u).transpose() * ng.jacobian(x);  // (p-1) x m
        Eigen::HouseholderQR<Mat> qr(rows.transpose());
        const Mat Q = qr.householderQ() * Mat::Identity(rows.cols(), rows.rows());
        const Vec xh = x.normalized();
        return xh - Q * (Q.transpose() * xh);
    };
    spec.hold_threshold = cfg.hold_threshold;
    spec.fail_threshold = cfg.fail_threshold;
    return run_scan(ng, cfg, spec);
}

CriterionReport isolated_critical_point_test(const MapGerm& g, const SamplerConfig& cfg) {
    const NumericGerm ng(g);
    const std::size_t p = g.p();
    const std::size_t m = g.m();
    // All p-subsets of columns, for the p x p minors of the normalized Jacobian.
    std::vector<std::vector<Eigen::Index>> subsets;
    std::vector<Eigen::Index> current;
    std::function<void(Eigen::Index)> choose = [&](Eigen::Index start) {
        if (current.size() == p) {
            subsets.push_back(current);
            return;
        }
        for (Eigen::Index c = start; c < static_cast<Eigen::Index>(m); ++c) {
            current.push_back(c);
            choose(c + 1);
            current.pop_back();
        }
    };
    choose(0);

    ScanSpec spec;
    spec.test = "isolated-critical-point";
    spec.exclude_tube = false;
    spec.margin = [&ng](const Vec& x) { return jacobian_rank_ratio(ng, x); };
    spec.residual = [&ng, &subsets, p](const Vec& x) -> Vec {
        Mat J = ng.jacobian(x);
        for (Eigen::Index i = 0; i < J.rows(); ++i) {
            const double n = J.row(i).norm();
            if (n == 0.0)
                J.row(i).setZero();
            else
                J.row(i) /= n;
        }
        Vec r(subsets.size());
        Mat block(p, p);
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            for (std::size_t c = 0; c < p; ++c) block.col(c) = J.col(subsets[s][c]);
            r[s] = block.determinant();
        }
        return r;
    };
    spec.hold_threshold = cfg.icp_hold_threshold;
    spec.fail_threshold = cfg.fail_threshold;
    return run_scan(ng, cfg, spec);
}

MSetWitnesses locate_m_set_witnesses(const MapGerm& g, const SamplerConfig& cfg) {
    require_p2(g, "locate_m_set_witnesses");
    cfg.validate();
    const NumericGerm ng(g);
    const ScanSpec spec = omega_spec(ng, cfg);

    MSetWitnesses out;
    for (std::size_t k = 0; k < cfg.radii.size(); ++k) {
        const RadiusScan scan = scan_radius(ng, cfg, spec, k);
        const double eps = scan.trace.epsilon;
        double omega_scale = 0.0;
        for (std::size_t i = 0; i < cfg.samples_per_sphere; ++i)
            omega_scale = std::max(omega_scale, ng.omega(sphere_sample(g.m(), eps, cfg.seed, k, i)).norm());
        for (const auto& rp : scan.refined) {
            if (rp.residual > cfg.witness_tolerance) continue;
            const double lambda = *lambda_at(ng, rp.x);
            const bool degenerate = std::abs(lambda) * rp.x.norm() <= 1e-7 * omega_scale;
            auto& list = degenerate ? out.degenerate : out.witnesses;
            if (near_any(list, k, rp.x, 1e-6 * eps)) continue;
            list.push_back({k, eps, rp.x, rp.margin, lambda});
        }
    }
    return out;
}

}  // namespace openbook
