#include "openbook/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "openbook/errors.hpp"
#include "openbook/sphere_sampling.hpp"

namespace openbook {

namespace {

constexpr std::uint64_t kLinkStream = 0x1157;
constexpr std::uint64_t kPageStream = 0x9a9e;
constexpr std::size_t kSeedCandidates = 512;

/// Differential of psi/|psi| restricted to the tangent frame B.
Mat direction_differential(const NumericGerm& g, const Vec& x, const Mat& B) {
    const Vec v = g.value(x);
    const double n = v.norm();
    const Vec u = v / n;
    const Mat J = g.jacobian(x);
    const Mat proj = Mat::Identity(g.p(), g.p()) - u * u.transpose();
    return proj * J * B / n;
}

/// Orthonormal basis of the page tangent space at x (m x (m - p)).
Mat page_tangent(const NumericGerm& g, const Vec& x) {
    const Mat B = tangent_basis(x);
    const Mat D = direction_differential(g, x, B);
    Eigen::JacobiSVD<Mat> svd(D, Eigen::ComputeFullV);
    const Eigen::Index k = static_cast<Eigen::Index>(g.m() - g.p());
    return B * svd.matrixV().rightCols(k);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::optional<Vec> newton_to_link(const NumericGerm& g, Vec x, double eps, const LinkConfig& cfg) {
    x = retract(x, eps);
    double r = g.value(x).norm();
    for (int it = 0; it < cfg.max_iter; ++it) {
        const Mat B = tangent_basis(x);
        const Mat JB = g.jacobian(x) * B;
        const Vec delta = JB.completeOrthogonalDecomposition().solve(-g.value(x));
        if (!delta.allFinite()) return std::nullopt;
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
            const Vec cand = retract(x + t * (B * delta), eps);
            const double rc = g.value(cand).norm();
            if (rc < r) {
                x = cand;
                r = rc;
                moved = true;
                break;
            }
        }
        if (!moved || t * delta.norm() <= 1e-15 * eps) break;
    }
    if (r <= cfg.link_tol) return x;
    return std::nullopt;
}

struct Branch {
    std::vector<Vec> points;
    std::string reason;
    bool closed = false;
};

class PageTracer {
public:
    PageTracer(const NumericGerm& g, double eps, Vec s, double tube_floor, const TraceConfig& cfg)
        : g_(g), eps_(eps), s_(std::move(s)), tube_floor_(tube_floor), cfg_(cfg), h_(cfg.step_for(eps)) {}

    std::optional<Vec> correct(const Vec& y) const {
        auto proj = project_to_fiber(g_, s_, SpherePoint{y, eps_}, tube_floor_, cfg_);
        if (!proj.point) return std::nullopt;
        return proj.point->coords;
    }

    /// Continues the curve from x0 along +t0 until closure, tube or stall.
    Branch curve(const Vec& x0, Vec t, std::size_t budget, bool detect_closure) const {
        Branch b;
        Vec x = x0;
        double h = h_;
        const double h_min = h_ * std::ldexp(1.0, -cfg_.max_bisections);
        while (b.points.size() < budget) {
            std::optional<Vec> next;
            while (h >= h_min) {
                const Vec y = retract(x + h * t, eps_);
                next = correct(y);
                if (next && (*next - x).dot(t) > 0.0 && (*next - y).norm() <= h) break;
                next.reset();
                h *= 0.5;
            }
            if (!next) {
                b.reason = g_.value(retract(x + h_min * t, eps_)).norm() < tube_floor_ ? "tube" : "stalled";
                return b;
            }
            if (detect_closure && b.points.size() > 2 && (*next - x0).norm() < 0.75 * h_ &&
                (x0 - x).dot(t) > 0.0) {
                b.closed = true;
                b.reason = "closed";
                return b;
            }
            Vec tn = page_tangent(g_, *next).col(0);
            if (tn.dot(t) < 0.0) tn = -tn;
            x = *next;
            t = tn;
            b.points.push_back(x);
            h = std::min(2.0 * h, h_);
        }
        b.reason = "max_points";
        return b;
    }

    /// Breadth-first net over a page of dimension >= 2.
    Branch net(const Vec& x0) const {
        Branch b;
        const double cell = 0.5 * h_;
        std::map<std::vector<long>, std::vector<std::size_t>> grid;
        auto key = [&](const Vec& x) {
            std::vector<long> k(static_cast<std::size_t>(x.size()));
            for (Eigen::Index i = 0; i < x.size(); ++i) k[static_cast<std::size_t>(i)] = std::lround(std::floor(x[i] / cell));
            return k;
        };
        auto too_close = [&](const Vec& x) {
            const auto k = key(x);
            std::vector<long> probe(k.size());
            const std::size_t n = k.size();
            std::size_t combos = 1;
            for (std::size_t i = 0; i < n; ++i) combos *= 3;
            for (std::size_t c = 0; c < combos; ++c) {
                std::size_t r = c;
                for (std::size_t i = 0; i < n; ++i, r /= 3) probe[i] = k[i] + static_cast<long>(r % 3) - 1;
                auto it = grid.find(probe);
                if (it == grid.end()) continue;
                for (std::size_t idx : it->second)
                    if ((b.points[idx] - x).norm() < cell) return true;
            }
            return false;
        };
        auto insert = [&](const Vec& x) {
            grid[key(x)].push_back(b.points.size());
            b.points.push_back(x);
        };

        insert(x0);
        for (std::size_t head = 0; head < b.points.size(); ++head) {
            const Vec x = b.points[head];
            const Mat T = page_tangent(g_, x);
            for (Eigen::Index c = 0; c < T.cols(); ++c) {
                for (double sign : {1.0, -1.0}) {
                    const Vec y = retract(x + sign * h_ * T.col(c), eps_);
                    const auto next = correct(y);
                    if (!next || (*next - y).norm() > h_ || too_close(*next)) continue;
                    if (b.points.size() >= cfg_.max_points) {
                        b.reason = "max_points";
                        return b;
                    }
                    insert(*next);
                }
            }
        }
        b.reason = "exhausted";
        return b;
    }

private:
    const NumericGerm& g_;
    double eps_;
    Vec s_;
    double tube_floor_;
    const TraceConfig& cfg_;
    double h_;
};

Vec unit_direction(const Vec& s, std::size_t p) {
    if (static_cast<std::size_t>(s.size()) != p)
        throw DimensionError("direction has " + std::to_string(s.size()) + " coordinates, germ has p = " +
                             std::to_string(p));
    const double n = s.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InputError("direction must be a nonzero finite vector");
    return s / n;
}

/// Minimal-norm tangent field w with d(psi/|psi|)(w) = d/dtheta (p = 2):
/// w = |psi|^2 omega_T / |omega_T|^2 with omega_T the tangential part of omega.
Vec lift(const NumericGerm& g, const Vec& x, double eps) {
    const Vec v = g.value(x);
    const Mat J = g.jacobian(x);
    Eigen::Vector2d rot(-v[1], v[0]);
    Vec w = J.transpose() * rot;
    w -= x * (x.dot(w) / (eps * eps));
    const double n2 = w.squaredNorm();
    if (!(n2 > 0.0)) throw NumericError("transport field is undefined at a critical point of psi/|psi|");
    return w * (v.squaredNorm() / n2);
}

}  // namespace

void TraceConfig::validate() const {
    if (step < 0.0) throw InputError("trace step must be positive");
    if (!(newton_tol > 0.0) || !(page_tol > 0.0)) throw InputError("tolerances must be positive");
    if (max_points == 0 || sweep_steps == 0) throw InputError("max_points and sweep_steps must be positive");
    if (!(trace_tube > 0.0) || !(sweep_tube > 0.0)) throw InputError("tube widths must be positive");
    if (max_bisections < 0 || newton_iter <= 0) throw InputError("iteration limits must be positive");
}

Vec direction_at(double theta) {
    Vec s(2);
    s << std::cos(theta), std::sin(theta);
    return s;
}

double direction_residual(const NumericGerm& g, const Vec& x, const Vec& s) {
    const Vec v = g.value(x);
    return (v / v.norm() - s).norm();
}

LinkSample sample_link(const MapGerm& g, double eps, const LinkConfig& cfg) {
    if (!(eps > 0.0)) throw InputError("epsilon must be positive");
    if (cfg.starts == 0 || !(cfg.dedupe_radius > 0.0) || !(cfg.link_tol > 0.0))
        throw InputError("invalid link configuration");
    const NumericGerm ng(g);

    std::vector<std::optional<Vec>> converged(cfg.starts);
    parallel_for(cfg.starts, [&](std::size_t i) {
        converged[i] = newton_to_link(ng, sphere_sample(g.m(), eps, cfg.seed, kLinkStream, i), eps, cfg);
    });

    std::vector<Vec> hits;
    for (auto& c : converged)
        if (c) hits.push_back(std::move(*c));

    LinkSample out;
    const double dedupe = cfg.dedupe_radius * eps;
    for (const auto& x : hits) {
        const bool dup = std::any_of(out.points.begin(), out.points.end(),
                                     [&](const SpherePoint& q) { return (q.coords - x).norm() <= dedupe; });
        if (!dup) out.points.push_back({x, eps});
    }

    UnionFind uf(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((hits[i] - hits[j]).norm() <= 2 * dedupe) uf.unite(i, j);
    for (std::size_t i = 0; i < hits.size(); ++i)
        if (uf.find(i) == i) ++out.component_count_estimate;
    return out;
}

FiberProjection project_to_fiber(const NumericGerm& g, const Vec& s_in, const SpherePoint& x0,
                                 double tube_floor, const TraceConfig& cfg) {
    const Vec s = unit_direction(s_in, g.p());
    const double eps = x0.radius;
    FiberProjection out;
    Vec x = x0.coords;
    if (std::abs(x.norm() - eps) > 1e-10 * eps) x = retract(x, eps);

    for (int it = 0;; ++it) {
        const Vec v = g.value(x);
        if (v.norm() < tube_floor) {
            out.failure = "tube";
            out.iterations = it;
            return out;
        }
        const Vec r = v / v.norm() - s;
        out.residual = r.norm();
        out.iterations = it;
        if (out.residual <= cfg.newton_tol) break;
        if (it >= cfg.newton_iter || !std::isfinite(out.residual)) {
            // On the -s half-fiber the differential has no component along s.
            out.failure = v.dot(s) < 0.0 ? "opposite" : "diverged";
            return out;
        }
        const Mat B = tangent_basis(x);
        const Mat D = direction_differential(g, x, B);
        const Vec delta = D.completeOrthogonalDecomposition().solve(-r);
        if (!delta.allFinite()) {
            out.failure = "diverged";
            return out;
        }
        x = retract(x + B * delta, eps);
    }
    out.point = SpherePoint{out.iterations == 0 ? x0.coords : x, eps};
    return out;
}

FiberProjection project_to_fiber(const MapGerm& g, const Vec& s, const SpherePoint& x0, const TraceConfig& cfg) {
    const NumericGerm ng(g);
    const double floor = cfg.trace_tube * psi_scale(ng, x0.radius, cfg.seed);
    return project_to_fiber(ng, s, x0, floor, cfg);
}

PageCloud trace_page(const MapGerm& g, double eps, const Vec& s_in, const TraceConfig& cfg) {
    if (!(eps > 0.0)) throw InputError("epsilon must be positive");
    cfg.validate();
    const NumericGerm ng(g);
    const Vec s = unit_direction(s_in, g.p());
    const double tube_floor = cfg.trace_tube * psi_scale(ng, eps, cfg.seed);

    // Seed: best-aligned admissible sphere samples, projected onto the fiber.
    std::vector<std::pair<double, Vec>> candidates;
    for (std::size_t i = 0; i < kSeedCandidates; ++i) {
        const Vec x = sphere_sample(g.m(), eps, cfg.seed, kPageStream, i);
        const Vec v = ng.value(x);
        if (v.norm() < tube_floor) continue;
        candidates.emplace_back(-(v / v.norm()).dot(s), x);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    PageTracer tracer(ng, eps, s, tube_floor, cfg);
    std::optional<Vec> seed;
    for (const auto& c : candidates) {
        if ((seed = tracer.correct(c.second))) break;
    }
    if (!seed) throw NumericError("no point of the requested page could be located on the sphere");

    PageCloud cloud;
    cloud.direction = s;
    std::vector<Vec> pts;
    if (g.m() - g.p() == 1) {
        const Vec t = page_tangent(ng, *seed).col(0);
        const Branch fwd = tracer.curve(*seed, t, cfg.max_points - 1, true);
        cloud.end_reasons.push_back(fwd.reason);
        cloud.closed = fwd.closed;
        if (!fwd.closed && fwd.reason != "max_points") {
            const Branch bwd = tracer.curve(*seed, -t, cfg.max_points - 1 - fwd.points.size(), false);
            cloud.end_reasons.push_back(bwd.reason);
            pts.assign(bwd.points.rbegin(), bwd.points.rend());
            cloud.truncated = bwd.reason == "max_points";
        } else {
            cloud.truncated = fwd.reason == "max_points";
        }
        pts.push_back(*seed);
        pts.insert(pts.end(), fwd.points.begin(), fwd.points.end());
    } else {
        Branch net = tracer.net(*seed);
        cloud.end_reasons.push_back(net.reason);
        cloud.truncated = net.reason == "max_points";
        pts = std::move(net.points);
    }

    for (auto& x : pts) {
        cloud.residuals.push_back(direction_residual(ng, x, s));
        cloud.points.push_back({std::move(x), eps});
    }
    return cloud;
}

SweepResult sweep_page(const MapGerm& g, double eps, const PageCloud& start, const TraceConfig& cfg) {
    if (g.p() != 2) throw PreconditionError("sweep_pages is defined for p = 2 only");
    cfg.validate();
    const NumericGerm ng(g);
    const Vec s0 = unit_direction(start.direction, 2);
    const double theta0 = std::atan2(s0[1], s0[0]);
    const double tube_floor = cfg.sweep_tube * psi_scale(ng, eps, cfg.seed);
    const std::size_t n_steps = cfg.sweep_steps;
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(n_steps);
    const std::size_t every = std::max<std::size_t>(1, n_steps / std::max<std::size_t>(1, cfg.snapshots));

    std::vector<std::size_t> record_steps;
    for (std::size_t k = every; k < n_steps; k += every) record_steps.push_back(k);
    record_steps.push_back(n_steps);

    const std::size_t n_pts = start.points.size();
    // trajectories[i][r] = point i at record_steps[r]
    std::vector<std::vector<Vec>> trajectories(n_pts);
    std::vector<double> max_res(n_pts, 0.0);
    std::vector<std::size_t> halvings(n_pts, 0);

    auto rk4 = [&](const Vec& x, double h) -> std::optional<Vec> {
        auto admissible = [&](const Vec& y) { return ng.value(y).norm() >= tube_floor; };
        const Vec k1 = lift(ng, x, eps);
        const Vec y2 = retract(x + 0.5 * h * k1, eps);
        if (!admissible(y2)) return std::nullopt;
        const Vec k2 = lift(ng, y2, eps);
        const Vec y3 = retract(x + 0.5 * h * k2, eps);
        if (!admissible(y3)) return std::nullopt;
        const Vec k3 = lift(ng, y3, eps);
        const Vec y4 = retract(x + h * k3, eps);
        if (!admissible(y4)) return std::nullopt;
        const Vec k4 = lift(ng, y4, eps);
        const Vec out = retract(x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4), eps);
        if (!admissible(out)) return std::nullopt;
        return out;
    };

    parallel_for(n_pts, [&](std::size_t i) {
        Vec x = start.points[i].coords;
        std::size_t r = 0;
        for (std::size_t k = 1; k <= n_steps; ++k) {
            // Subdivide the angular step until no stage enters the tube.
            std::optional<Vec> next;
            for (int split = 0; split <= cfg.max_bisections && !next; ++split) {
                const int pieces = 1 << split;
                Vec y = x;
                bool ok = true;
                for (int q = 0; q < pieces && ok; ++q) {
                    auto z = rk4(y, dtheta / pieces);
                    if (z)
                        y = *z;
                    else
                        ok = false;
                }
                if (ok)
                    next = y;
                else
                    ++halvings[i];
            }
            if (!next) throw NumericError("page transport entered the tube around the link");
            x = *next;
            max_res[i] = std::max(max_res[i], direction_residual(ng, x, direction_at(theta0 + dtheta * k)));
            if (r < record_steps.size() && record_steps[r] == k) {
                trajectories[i].push_back(x);
                ++r;
            }
        }
    });

    SweepResult out;
    for (std::size_t r = 0; r < record_steps.size(); ++r) {
        const double theta = theta0 + dtheta * static_cast<double>(record_steps[r]);
        PageCloud cloud;
        cloud.direction = direction_at(theta);
        for (std::size_t i = 0; i < n_pts; ++i) {
            cloud.residuals.push_back(direction_residual(ng, trajectories[i][r], cloud.direction));
            cloud.points.push_back({trajectories[i][r], eps});
        }
        out.angles.push_back(theta);
        out.clouds.push_back(std::move(cloud));
    }
    for (std::size_t i = 0; i < n_pts; ++i) {
        out.closure_residual = std::max(out.closure_residual, direction_residual(ng, trajectories[i].back(), s0));
        out.max_residual = std::max(out.max_residual, max_res[i]);
        out.halvings += halvings[i];
    }
    return out;
}

SweepResult sweep_pages(const MapGerm& g, double eps, Verdict evidence, const TraceConfig& cfg, double theta0) {
    if (evidence != Verdict::holds)
        throw PreconditionError("page transport needs a HOLDS submersion verdict (got " + to_string(evidence) + ")");
    if (g.p() != 2) throw PreconditionError("sweep_pages is defined for p = 2 only");
    const PageCloud start = trace_page(g, eps, direction_at(theta0), cfg);
    return sweep_page(g, eps, start, cfg);
}

}  // namespace openbook
