#include "openbook_cli/app.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "openbook/errors.hpp"
#include "openbook_cli/corpus.hpp"
#include "openbook_cli/report.hpp"

namespace openbook::cli {

namespace {

const std::set<std::string> kCommands{"analyze", "weights", "submersion", "link", "pages", "examples"};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used == 0 || used != item.size()) throw InputError(std::string("malformed ") + what + " '" + text + "'");
        values.push_back(v);
    }
    if (values.empty()) throw InputError(std::string("empty ") + what);
    return values;
}

Vec page_direction(const AnalysisRequest& r, std::size_t p) {
    Vec s = Vec::Zero(static_cast<Eigen::Index>(p));
    if (!r.direction) {
        s[0] = 1.0;
        return s;
    }
    if (r.direction->size() != p)
        throw DimensionError("--direction has " + std::to_string(r.direction->size()) +
                             " entries, germ has p = " + std::to_string(p));
    for (std::size_t i = 0; i < p; ++i) s[static_cast<Eigen::Index>(i)] = (*r.direction)[i];
    if (!(s.norm() > 0.0)) throw InputError("--direction must be nonzero");
    return s.normalized();
}

json full_config(const AnalysisRequest& r) {
    return {{"sampler", to_json(r.sampler)},
            {"trace", to_json(r.trace)},
            {"link", to_json(r.link)},
            {"epsilon", r.epsilon}};
}

void emit(const AnalysisRequest& r, const std::string& text, std::ostream& out) {
    if (!r.out) {
        out << text;
        return;
    }
    std::ofstream file(*r.out, std::ios::binary);
    if (!file) throw InputError("cannot open output file '" + *r.out + "'");
    file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Evidence for page transport: the weighted certificate when available,
/// otherwise the sampling test.
CriterionReport transport_evidence(const MapGerm& g, const SamplerConfig& cfg) {
    if (auto ws = detect_weights(g))
        if (auto cert = weighted_certificate(g, *ws)) return *cert;
    return submersion_test(g, cfg);
}

int do_analyze(const AnalysisRequest& r, const MapGerm& g, std::ostream& out) {
    const Analysis a = analyze(g, r.sampler);
    json report = report_skeleton("analyze", to_json(g), full_config(r), r.normalize);
    set_decision(report, a.decision);
    report["weights"] = a.weights ? to_json(*a.weights) : json(nullptr);
    json stages = json::array();
    for (const auto& s : a.stages()) stages.push_back(to_json(s));
    report["stages"] = stages;
    if (r.with_link) report["link"] = to_json(sample_link(g, r.epsilon, r.link));
    std::optional<PageCloud> page;
    if (r.with_pages && a.decision.verdict == Verdict::holds) {
        page = trace_page(g, r.epsilon, page_direction(r, g.p()), r.trace);
        report["page"] = to_json(*page);
    }
    if (r.format == "csv") {
        std::ostringstream csv;
        write_trace_csv(csv, a.decision);
        emit(r, csv.str(), out);
    } else {
        emit(r, dump(report), out);
    }
    return kOk;
}

int do_weights(const AnalysisRequest& r, const MapGerm& g, std::ostream& out) {
    json report = report_skeleton("weights", to_json(g), full_config(r), r.normalize);
    const auto ws = detect_weights(g);
    report["weights"] = ws ? to_json(*ws) : json(nullptr);
    if (ws) {
        json probes = json::array();
        for (const auto& s : tangency_probe_directions(g.p())) {
            std::vector<std::string> coords;
            for (const auto& c : s.coords()) coords.push_back(c.to_string());
            probes.push_back({{"direction", coords}, {"tangent", verify_fiber_tangency(g, *ws, s)}});
        }
        report["euler_identity"] = verify_euler_identity(g, *ws);
        report["fiber_tangency"] = probes;
        if (auto cert = weighted_certificate(g, *ws)) set_decision(report, *cert);
    }
    if (r.format == "csv") {
        if (!ws) throw InputError("germ is not weighted-homogeneous; nothing to write as CSV");
        std::ostringstream csv;
        write_weights_csv(csv, g, *ws);
        emit(r, csv.str(), out);
    } else {
        emit(r, dump(report), out);
    }
    return kOk;
}

int do_submersion(const AnalysisRequest& r, const MapGerm& g, std::ostream& out) {
    SamplerConfig cfg = r.sampler;
    if (r.format == "csv") cfg.keep_samples = true;
    const bool omega_route = r.route == "omega" || (r.route == "auto" && g.p() == 2);
    const CriterionReport rep = omega_route ? submersion_test(g, cfg) : submersion_rank_test(g, cfg);
    json report = report_skeleton("submersion", to_json(g), full_config(r), r.normalize);
    set_decision(report, rep);
    report["test"] = rep.test;
    if (r.format == "csv") {
        std::ostringstream csv;
        write_samples_csv(csv, rep, g.m());
        emit(r, csv.str(), out);
    } else {
        emit(r, dump(report), out);
    }
    return kOk;
}

int do_link(const AnalysisRequest& r, const MapGerm& g, std::ostream& out) {
    const LinkSample link = sample_link(g, r.epsilon, r.link);
    if (r.format == "csv") {
        std::ostringstream csv;
        write_link_csv(csv, link, NumericGerm(g));
        emit(r, csv.str(), out);
        return kOk;
    }
    json report = report_skeleton("link", to_json(g), full_config(r), r.normalize);
    report["link"] = to_json(link);
    emit(r, dump(report), out);
    return kOk;
}

int do_pages(const AnalysisRequest& r, const MapGerm& g, std::ostream& out) {
    const Vec s = page_direction(r, g.p());
    const PageCloud page = trace_page(g, r.epsilon, s, r.trace);
    json report = report_skeleton("pages", to_json(g), full_config(r), r.normalize);
    report["page"] = to_json(page);
    std::optional<SweepResult> sweep;
    if (r.sweep) {
        const CriterionReport evidence = transport_evidence(g, r.sampler);
        set_decision(report, evidence);
        if (evidence.verdict != Verdict::holds)
            throw PreconditionError("page transport needs a HOLDS submersion verdict (got " +
                                    to_string(evidence.verdict) + ")");
        sweep = sweep_page(g, r.epsilon, page, r.trace);
        report["sweep"] = to_json(*sweep);
    }
    if (r.format == "csv") {
        std::ostringstream csv;
        write_pages_csv(csv, page, sweep ? &*sweep : nullptr, std::atan2(s.size() > 1 ? s[1] : 0.0, s[0]));
        emit(r, csv.str(), out);
    } else {
        emit(r, dump(report), out);
    }
    return kOk;
}

int do_examples(const AnalysisRequest& r, std::ostream& out, std::ostream& err) {
    std::vector<CorpusEntry> corpus;
    if (!r.empty_corpus) {
        for (auto& e : builtin_corpus())
            if (r.only.empty() || std::find(r.only.begin(), r.only.end(), e.name) != r.only.end())
                corpus.push_back(std::move(e));
        for (const auto& name : r.only)
            if (!find_builtin(name)) throw InputError("--only: unknown corpus entry '" + name + "'");
    }
    const ExampleSummary summary = verify_examples(corpus, r.sampler);
    if (r.format == "csv") {
        std::ostringstream csv;
        write_examples_csv(csv, summary);
        emit(r, csv.str(), out);
    } else {
        json report = report_skeleton("examples", nullptr, full_config(r), r.normalize);
        report["examples"] = to_json(summary);
        emit(r, dump(report), out);
    }
    for (const auto& o : summary.outcomes)
        if (!o.passed)
            err << "mismatch: " << o.name << " expected " << to_string(o.expected) << " observed "
                << to_string(o.observed) << '\n';
    for (const auto& c : summary.regressions)
        if (!c.passed) err << "mismatch: " << c.name << ' ' << c.detail << '\n';
    return summary.passed() ? kOk : kMismatch;
}

}  // namespace

void AnalysisRequest::validate() const {
    if (!kCommands.count(command)) throw InputError("unknown command '" + command + "'");
    if (command != "examples" && germ_source.empty()) throw InputError("missing germ (builtin name or file)");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("--epsilon must be positive");
    if (format != "json" && format != "csv") throw InputError("--format must be json or csv");
    if (route != "auto" && route != "omega" && route != "rank") throw InputError("--route must be omega or rank");
    sampler.validate();
    trace.validate();
}

int run(const AnalysisRequest& r, std::ostream& out, std::ostream& err) {
    try {
        r.validate();
        if (r.command == "examples") return do_examples(r, out, err);
        const MapGerm g = resolve_germ(r.germ_source);
        if (r.command == "analyze") return do_analyze(r, g, out);
        if (r.command == "weights") return do_weights(r, g, out);
        if (r.command == "submersion") return do_submersion(r, g, out);
        if (r.command == "link") return do_link(r, g, out);
        return do_pages(r, g, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (at offset " << e.position() << ")\n";
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kNumericError;
    } catch (const std::exception& e) {
        err << "internal failure: " << e.what() << '\n';
        return kNumericError;
    }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Open book decompositions from real map germs"};
    app.require_subcommand(1);

    AnalysisRequest r;
    std::optional<std::uint64_t> seed;
    std::string radii, direction;
    std::optional<double> step;

    auto common = [&](CLI::App* sub, bool needs_germ) {
        if (needs_germ) sub->add_option("germ", r.germ_source, "builtin name or germ file")->required();
        sub->add_option("--seed", seed, "RNG seed for every sampler");
        sub->add_option("--samples", r.sampler.samples_per_sphere, "samples per sphere");
        sub->add_option("--radii", radii, "comma-separated decreasing radii");
        sub->add_option("--tube-delta", r.sampler.tube_delta, "relative tube width around V");
        sub->add_option("--hold-thr", r.sampler.hold_threshold, "margin at or above which a radius holds");
        sub->add_option("--fail-thr", r.sampler.fail_threshold, "margin at or below which a radius fails");
        sub->add_option("--epsilon", r.epsilon, "sphere radius for link and pages");
        sub->add_option("--direction", direction, "page direction s, comma-separated");
        sub->add_option("--step", step, "page continuation step");
        sub->add_option("--sweep-steps", r.trace.sweep_steps, "angular steps for a full loop");
        sub->add_option("--format", r.format, "json or csv");
        sub->add_option("--out", r.out, "output file (default stdout)");
        sub->add_flag("--normalize", r.normalize, "omit the timestamp");
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "full pipeline");
    common(analyze_cmd, true);
    analyze_cmd->add_flag("--with-link", r.with_link, "also sample the link");
    analyze_cmd->add_flag("--with-pages", r.with_pages, "also trace one page when the verdict holds");
    common(app.add_subcommand("weights", "weighted-homogeneity certificate"), true);
    auto* sub_cmd = app.add_subcommand("submersion", "sampling submersion test");
    common(sub_cmd, true);
    sub_cmd->add_option("--route", r.route, "omega or rank");
    common(app.add_subcommand("link", "sample the link"), true);
    auto* pages_cmd = app.add_subcommand("pages", "trace a page");
    common(pages_cmd, true);
    pages_cmd->add_flag("--sweep", r.sweep, "transport the page once around the base circle");
    auto* ex_cmd = app.add_subcommand("examples", "verify the builtin corpus");
    common(ex_cmd, false);
    ex_cmd->add_option("--only", r.only, "restrict to these entries");
    ex_cmd->add_flag("--empty", r.empty_corpus, "run an empty corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    r.command = app.get_subcommands().front()->get_name();
    try {
        if (seed) r.sampler.seed = r.trace.seed = r.link.seed = *seed;
        if (!radii.empty()) r.sampler.radii = parse_list(radii, "--radii");
        if (!direction.empty()) r.direction = parse_list(direction, "--direction");
        if (step) r.trace.step = *step;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return run(r, out, err);
}

}  // namespace openbook::cli
