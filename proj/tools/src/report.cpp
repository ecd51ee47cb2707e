#include "openbook_cli/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace openbook::cli {

namespace {

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

void coords_header(std::ostream& out, std::size_t m) {
    for (std::size_t j = 1; j <= m; ++j) out << ",x" << j;
}

void coords_row(std::ostream& out, const Vec& x) {
    for (Eigen::Index j = 0; j < x.size(); ++j) out << ',' << x[j];
}

}  // namespace

json to_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

json to_json(const MapGerm& g) {
    return {{"name", g.name()}, {"m", g.m()}, {"p", g.p()}, {"vars", g.var_names()},
            {"components", g.component_strings()}};
}

json to_json(const SamplerConfig& cfg) {
    return {{"seed", cfg.seed},
            {"samples_per_sphere", cfg.samples_per_sphere},
            {"radii", cfg.radii},
            {"tube_delta", cfg.tube_delta},
            {"refine_steps", cfg.refine_steps},
            {"refine_seeds", cfg.refine_seeds},
            {"hold_threshold", cfg.hold_threshold},
            {"fail_threshold", cfg.fail_threshold},
            {"icp_hold_threshold", cfg.icp_hold_threshold},
            {"witness_tolerance", cfg.witness_tolerance}};
}

json to_json(const TraceConfig& cfg) {
    return {{"step", cfg.step},           {"newton_tol", cfg.newton_tol},   {"page_tol", cfg.page_tol},
            {"max_points", cfg.max_points}, {"sweep_steps", cfg.sweep_steps}, {"trace_tube", cfg.trace_tube},
            {"sweep_tube", cfg.sweep_tube}, {"seed", cfg.seed}};
}

json to_json(const LinkConfig& cfg) {
    return {{"starts", cfg.starts},
            {"seed", cfg.seed},
            {"max_iter", cfg.max_iter},
            {"link_tol", cfg.link_tol},
            {"dedupe_radius", cfg.dedupe_radius}};
}

json to_json(const WeightSystem& ws) {
    return {{"weights", ws.weights}, {"degree", ws.degree}, {"solution_dimension", ws.solution_dimension},
            {"ambiguous", ws.ambiguous()}};
}

json to_json(const CriterionReport& r) {
    json trace = json::array();
    for (const auto& t : r.margin_trace)
        trace.push_back({{"epsilon", t.epsilon},
                         {"min_margin", t.min_margin},
                         {"argmin", to_json(t.argmin)},
                         {"samples_used", t.samples_used},
                         {"excluded", t.excluded}});
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back({{"radius_index", w.radius_index},
                             {"epsilon", w.epsilon},
                             {"point", to_json(w.point)},
                             {"margin", w.margin},
                             {"lambda", w.lambda ? json(*w.lambda) : json(nullptr)}});
    return {{"test", r.test},
            {"verdict", to_string(r.verdict)},
            {"certificate", optional_string(r.certificate)},
            {"margin_trace", trace},
            {"witnesses", witnesses}};
}

json to_json(const LinkSample& link) {
    json pts = json::array();
    for (const auto& p : link.points) pts.push_back(to_json(p.coords));
    return {{"points", pts}, {"component_count_estimate", link.component_count_estimate}};
}

json to_json(const PageCloud& page) {
    json pts = json::array();
    for (const auto& p : page.points) pts.push_back(to_json(p.coords));
    double max_res = 0.0;
    for (double r : page.residuals) max_res = std::max(max_res, r);
    return {{"direction", to_json(page.direction)},
            {"point_count", page.points.size()},
            {"max_residual", max_res},
            {"closed", page.closed},
            {"truncated", page.truncated},
            {"end_reasons", page.end_reasons},
            {"points", pts},
            {"residuals", page.residuals}};
}

json to_json(const SweepResult& sweep) {
    json steps = json::array();
    for (std::size_t k = 0; k < sweep.clouds.size(); ++k) {
        double max_res = 0.0;
        for (double r : sweep.clouds[k].residuals) max_res = std::max(max_res, r);
        steps.push_back({{"angle", sweep.angles[k]}, {"max_residual", max_res}});
    }
    return {{"closure_residual", sweep.closure_residual},
            {"max_residual", sweep.max_residual},
            {"halvings", sweep.halvings},
            {"snapshots", steps}};
}

json to_json(const ExampleSummary& summary) {
    json entries = json::array();
    for (const auto& o : summary.outcomes) {
        json stages = json::array();
        for (const auto& s : o.analysis.stages()) stages.push_back(to_json(s));
        entries.push_back({{"name", o.name},
                           {"expected", to_string(o.expected)},
                           {"observed", to_string(o.observed)},
                           {"expected_certificate", optional_string(o.expected_certificate)},
                           {"certificate", optional_string(o.certificate)},
                           {"weights", o.analysis.weights ? to_json(*o.analysis.weights) : json(nullptr)},
                           {"passed", o.passed},
                           {"stages", stages}});
    }
    json regressions = json::array();
    for (const auto& r : summary.regressions)
        regressions.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    return {{"passed", summary.passed()}, {"entries", entries}, {"regressions", regressions}};
}

json report_skeleton(const std::string& command, const json& germ, const json& config, bool normalize) {
    json report = {{"tool", "openbook"},
                   {"version", OPENBOOK_VERSION},
                   {"command", command},
                   {"germ", germ},
                   {"verdict", nullptr},
                   {"certificate", nullptr},
                   {"margin_trace", json::array()},
                   {"witnesses", json::array()},
                   {"config", config}};
    if (!normalize) report["generated_at"] = utc_now();
    return report;
}

void set_decision(json& report, const CriterionReport& r) {
    const json j = to_json(r);
    report["verdict"] = j["verdict"];
    report["certificate"] = j["certificate"];
    report["margin_trace"] = j["margin_trace"];
    report["witnesses"] = j["witnesses"];
}

void write_samples_csv(std::ostream& out, const CriterionReport& r, std::size_t m) {
    out << std::setprecision(17) << "radius_index,sample_index,epsilon,margin";
    coords_header(out, m);
    out << '\n';
    for (const auto& s : r.samples) {
        out << s.radius_index << ',' << s.sample_index << ',' << r.config.radii.at(s.radius_index) << ',';
        if (s.margin) out << *s.margin;
        coords_row(out, s.point);
        out << '\n';
    }
}

void write_trace_csv(std::ostream& out, const CriterionReport& r) {
    out << std::setprecision(17) << "radius_index,epsilon,min_margin,samples_used,excluded\n";
    for (std::size_t k = 0; k < r.margin_trace.size(); ++k) {
        const auto& t = r.margin_trace[k];
        out << k << ',' << t.epsilon << ',' << t.min_margin << ',' << t.samples_used << ',' << t.excluded << '\n';
    }
}

void write_link_csv(std::ostream& out, const LinkSample& link, const NumericGerm& g) {
    out << std::setprecision(17) << "point_index";
    coords_header(out, g.m());
    out << ",psi_norm\n";
    for (std::size_t i = 0; i < link.points.size(); ++i) {
        out << i;
        coords_row(out, link.points[i].coords);
        out << ',' << g.value(link.points[i].coords).norm() << '\n';
    }
}

void write_pages_csv(std::ostream& out, const PageCloud& start, const SweepResult* sweep, double theta0) {
    const std::size_t m = start.points.empty() ? 0 : static_cast<std::size_t>(start.points.front().coords.size());
    out << std::setprecision(17) << "angle_index,angle";
    coords_header(out, m);
    out << ",residual\n";
    auto emit = [&](std::size_t index, double angle, const PageCloud& cloud) {
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            out << index << ',' << angle;
            coords_row(out, cloud.points[i].coords);
            out << ',' << cloud.residuals[i] << '\n';
        }
    };
    emit(0, theta0, start);
    if (sweep)
        for (std::size_t k = 0; k < sweep->clouds.size(); ++k) emit(k + 1, sweep->angles[k], sweep->clouds[k]);
}

void write_weights_csv(std::ostream& out, const MapGerm& g, const WeightSystem& ws) {
    out << "variable,weight\n";
    for (std::size_t j = 0; j < g.m(); ++j) out << g.var_names()[j] << ',' << ws.weights[j] << '\n';
    out << "alpha," << ws.degree << '\n';
}

void write_examples_csv(std::ostream& out, const ExampleSummary& summary) {
    out << "name,expected,observed,certificate,passed\n";
    for (const auto& o : summary.outcomes)
        out << o.name << ',' << to_string(o.expected) << ',' << to_string(o.observed) << ','
            << o.certificate.value_or("") << ',' << (o.passed ? "true" : "false") << '\n';
    for (const auto& r : summary.regressions)
        out << r.name << ",,,," << (r.passed ? "true" : "false") << '\n';
}

}  // namespace openbook::cli
