// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "openbook/criteria.hpp"
#include "openbook/fibration.hpp"
#include "openbook/sphere_sampling.hpp"
#include "openbook_cli/corpus.hpp"
#include "openbook_cli/report.hpp"

using namespace openbook;
using openbook::cli::CorpusEntry;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;  // seconds; 0 = none
    std::function<Outcome()> body;
};

const MapGerm& corpus_germ(const std::string& name) {
    static const std::vector<CorpusEntry> corpus = cli::builtin_corpus();
    for (const auto& e : corpus)
        if (e.name == name) return e.germ;
    throw std::runtime_error("missing corpus entry " + name);
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

Outcome omega_exactness() {
    const MapGerm& g = corpus_germ("seade-ex-2");
    const auto check = cli::omega_regression(g);
    return {check.passed, check.passed ? "3/3 components equal in canonical form" : check.detail};
}

Outcome verdict_regression() {
    const std::vector<std::pair<std::string, Verdict>> expected{
        {"milnor-ex-1", Verdict::fails}, {"milnor-ex-1-variant", Verdict::holds}, {"seade-ex-2", Verdict::holds}};
    Outcome out{true, {}};
    for (const auto& [name, verdict] : expected) {
        const Verdict got = submersion_test(corpus_germ(name)).verdict;
        out.passed = out.passed && got == verdict;
        out.detail += name + "=" + to_string(got) + " ";
    }
    return out;
}

Outcome witness_geometry() {
    const SamplerConfig cfg;
    const CriterionReport r = submersion_test(corpus_germ("milnor-ex-1"), cfg);
    if (r.verdict != Verdict::fails) return {false, "verdict " + to_string(r.verdict)};
    std::vector<std::size_t> per_radius(cfg.radii.size(), 0);
    double worst_z = 0.0, worst_curve = 0.0;
    for (const auto& w : r.witnesses) {
        const double x = w.point[0], y = w.point[1], z = w.point[2];
        const double e = w.epsilon;
        const double rr = x * x + y * y;
        worst_z = std::max(worst_z, std::abs(z) / (1e-4 * e));
        worst_curve = std::max(worst_curve, std::abs(rr * rr - y * x * x) / (1e-6 * std::pow(e, 4)));
        ++per_radius[w.radius_index];
    }
    const bool every_radius = std::all_of(per_radius.begin(), per_radius.end(), [](std::size_t n) { return n > 0; });
    return {every_radius && worst_z <= 1.0 && worst_curve <= 1.0,
            std::to_string(r.witnesses.size()) + " witnesses; max |z|/(1e-4 eps) = " + fmt(worst_z) +
                ", max curve residual/(1e-6 eps^4) = " + fmt(worst_curve)};
}

Outcome weighted_certificate_check() {
    const MapGerm& g = corpus_germ("acampo");
    const auto ws = detect_weights(g);
    if (!ws) return {false, "no weights detected"};
    const bool weights_ok = ws->weights == std::vector<std::int64_t>{1, 1, 1, 1} && ws->degree == 3;
    const bool euler = verify_euler_identity(g, *ws);
    bool tangency = true;
    for (const auto& s : tangency_probe_directions(g.p())) tangency = tangency && verify_fiber_tangency(g, *ws, s);
    const auto cert = weighted_certificate(g, *ws);
    const bool cert_ok = cert && cert->verdict == Verdict::holds && cert->certificate == kWeightedHomogeneousCertificate;
    return {weights_ok && euler && tangency && cert_ok,
            std::string("weights ") + (weights_ok ? "ok" : "wrong") + ", euler " + (euler ? "ok" : "no") +
                ", tangency " + (tangency ? "ok" : "no") + ", certificate " + (cert_ok ? "theorem-4.1" : "missing")};
}

Outcome holomorphic_sanity() {
    Outcome out{true, {}};
    for (const std::string f : {"z1^2 + z2^2", "z1^2 + z2^3"}) {
        const std::vector<std::string> zs{"z1", "z2"};
        const MapGerm g = holomorphic_to_real(parse_gaussian_polynomial(f, zs));
        const auto J = jacobian(g);
        Polynomial inner(g.m()), diff(g.m());
        for (std::size_t j = 0; j < g.m(); ++j) {
            inner = inner + J[0][j] * J[1][j];
            diff = diff + J[0][j] * J[0][j] - J[1][j] * J[1][j];
        }
        const bool cr = inner.is_zero() && diff.is_zero();
        const Verdict v = submersion_rank_test(g).verdict;
        out.passed = out.passed && cr && v == Verdict::holds;
        out.detail += f + ": CR " + (cr ? "exact" : "broken") + ", rank test " + to_string(v) + "; ";
    }
    return out;
}

Outcome cross_validation() {
    SamplerConfig cfg;
    cfg.keep_samples = true;
    Outcome out{true, {}};
    for (const auto& e : cli::builtin_corpus()) {
        if (e.germ.p() != 2) continue;
        const CriterionReport a = submersion_test(e.germ, cfg);
        const CriterionReport b = submersion_rank_test(e.germ, cfg);
        std::size_t shared = 0, agree = 0;
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
            if (!a.samples[i].margin || !b.samples[i].margin) continue;
            ++shared;
            agree += (*a.samples[i].margin < 1e-9) == (*b.samples[i].margin < 1e-6);
        }
        const double rate = shared ? static_cast<double>(agree) / shared : 1.0;
        const bool ok = a.verdict == b.verdict && rate >= 0.99;
        out.passed = out.passed && ok;
        out.detail += e.name + " " + to_string(a.verdict) + "/" + to_string(b.verdict) + " " +
                      fmt(100.0 * rate) + "%; ";
    }
    return out;
}

Outcome numerical_differentiation() {
    const double h = 1e-6;
    double worst = 0.0;
    std::size_t checked = 0;
    for (const auto& e : cli::builtin_corpus()) {
        const NumericGerm g(e.germ);
        for (std::uint64_t i = 0; i < 100; ++i) {
            // Seeded points in the ball of radius 1.
            const Vec x = sphere_sample(g.m(), 1.0, 7, 0xd1ff, i) *
                          (0.05 + 0.95 * std::abs(sphere_sample(1 + g.m(), 1.0, 7, 0xd1fe, i)[0]));
            const Mat J = g.jacobian(x);
            for (std::size_t j = 0; j < g.m(); ++j) {
                Vec xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                const Vec fd = (g.value(xp) - g.value(xm)) / (2 * h);
                for (std::size_t r = 0; r < g.p(); ++r) {
                    const double scale = std::max(1.0, std::abs(J(r, j)));
                    worst = std::max(worst, std::abs(fd[r] - J(r, j)) / scale);
                }
            }
            ++checked;
        }
    }
    return {worst <= 1e-6, std::to_string(checked) + " points, max relative deviation " + fmt(worst)};
}

Outcome link_counts() {
    const LinkSample a = sample_link(corpus_germ("milnor-ex-1"), 1.0);
    double dev_a = 0.0;
    bool plus = false, minus = false;
    for (const auto& p : a.points) {
        const double zs = p.coords[2] > 0 ? 1.0 : -1.0;
        (zs > 0 ? plus : minus) = true;
        dev_a = std::max({dev_a, std::abs(p.coords[0]), std::abs(p.coords[1]), std::abs(p.coords[2] - zs)});
    }
    const bool ok_a = a.points.size() == 2 && plus && minus && dev_a <= 1e-10;

    // Bisection oracle for x^2 + x^6 = 1 on (0, 1].
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (mid * mid + std::pow(mid, 6) < 1.0 ? lo : hi) = mid;
    }
    const double x_star = 0.5 * (lo + hi);
    const LinkSample b = sample_link(corpus_germ("seade-ex-2"), 1.0);
    double dev_b = 0.0;
    for (const auto& p : b.points) dev_b = std::max(dev_b, std::abs(std::abs(p.coords[0]) - x_star));
    const bool ok_b = b.points.size() == 2 && dev_b <= 1e-8;
    return {ok_a && ok_b, "milnor-ex-1: " + std::to_string(a.points.size()) + " points, deviation " + fmt(dev_a) +
                              "; seade-ex-2: " + std::to_string(b.points.size()) + " points, |x| vs " +
                              std::to_string(x_star) + " deviation " + fmt(dev_b)};
}

Outcome monodromy_closure() {
    const MapGerm& g = corpus_germ("seade-ex-2");
    const double eps = 0.5;
    TraceConfig cfg;
    const PageCloud page = trace_page(g, eps, direction_at(0.0), cfg);
    const SweepResult coarse = sweep_page(g, eps, page, cfg);
    cfg.sweep_steps *= 2;
    const SweepResult fine = sweep_page(g, eps, page, cfg);
    const double ratio = coarse.closure_residual / fine.closure_residual;
    return {coarse.closure_residual <= 1e-5 && ratio >= 8.0,
            std::to_string(page.points.size()) + " page points; closure " + fmt(coarse.closure_residual) + " (720), " +
                fmt(fine.closure_residual) + " (1440), ratio " + fmt(ratio)};
}

Outcome determinism() {
    const SamplerConfig cfg;
    auto render = [&] {
        cli::json j = cli::report_skeleton("examples", nullptr, cli::to_json(cfg), true);
        j["examples"] = cli::to_json(cli::verify_examples(cli::builtin_corpus(), cfg));
        return j.dump(2);
    };
    const std::string a = render();
    const std::string b = render();
    return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "omega exactness", 1.0, omega_exactness},
        {2, "verdict regression", 60.0, verdict_regression},
        {3, "witness geometry", 0.0, witness_geometry},
        {4, "weighted certificate", 1.0, weighted_certificate_check},
        {5, "holomorphic sanity", 0.0, holomorphic_sanity},
        {6, "cross-validation", 0.0, cross_validation},
        {7, "numerical differentiation", 0.0, numerical_differentiation},
        {8, "link counts", 0.0, link_counts},
        {9, "monodromy closure", 30.0, monodromy_closure},
        {10, "determinism", 0.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
        if (!in_time) o.detail += " (over the " + fmt(c.time_limit) + " s limit)";
        const bool ok = o.passed && in_time;
        failures += !ok;
        std::printf("%s criterion %2d  %-26s %7.2f s  %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                    o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
