#include "openbook_cli/corpus.hpp"

#include <filesystem>
#include <sstream>

#include "openbook/errors.hpp"

namespace openbook::cli {

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};
const std::vector<std::string> kXYZW{"x", "y", "z", "w"};

MapGerm holomorphic(const std::string& f, const std::string& name) {
    const std::vector<std::string> zs{"z1", "z2"};
    return holomorphic_to_real(parse_gaussian_polynomial(f, zs), std::nullopt, name);
}

}  // namespace

std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> c;
    c.push_back({"milnor-ex-1", "(y(x^2+y^2+z^2) + x^2, x); M accumulates at 0",
                 MapGerm::from_strings({"y*(x^2+y^2+z^2) + x^2", "x"}, kXYZ, "milnor-ex-1"), Verdict::fails,
                 std::nullopt, false, std::nullopt});
    c.push_back({"milnor-ex-1-variant", "milnor-ex-1 without the quadratic part",
                 MapGerm::from_strings({"y*(x^2+y^2+z^2)", "x"}, kXYZ, "milnor-ex-1-variant"), Verdict::holds,
                 std::nullopt, false, std::nullopt});
    c.push_back({"seade-ex-2", "(z(x^2+y^2+z^2), y - x^3); link is two points",
                 MapGerm::from_strings({"z*(x^2+y^2+z^2)", "y - x^3"}, kXYZ, "seade-ex-2"), Verdict::holds,
                 std::nullopt, false, std::nullopt});
    c.push_back({"acampo", "weighted-homogeneous germ R^4 -> R^2",
                 MapGerm::from_strings({"x*(z^2+w^2) + z*(x^2+y^2)", "y*(z^2+w^2) + w*(x^2+y^2)"}, kXYZW, "acampo"),
                 Verdict::holds, std::string(kWeightedHomogeneousCertificate), false, std::nullopt});
    c.push_back({"linear", "(x, y) on R^3; V is the z-axis",
                 MapGerm::from_strings({"x", "y"}, kXYZ, "linear"), Verdict::holds,
                 std::string(kWeightedHomogeneousCertificate), false, std::nullopt});
    c.push_back({"brieskorn-2-2", "Re/Im of z1^2 + z2^2", holomorphic("z1^2 + z2^2", "brieskorn-2-2"),
                 Verdict::holds, std::string(kWeightedHomogeneousCertificate), true, std::nullopt});
    c.push_back({"brieskorn-2-3", "Re/Im of z1^2 + z2^3", holomorphic("z1^2 + z2^3", "brieskorn-2-3"),
                 Verdict::holds, std::string(kWeightedHomogeneousCertificate), true, std::nullopt});
    return c;
}

std::optional<CorpusEntry> find_builtin(const std::string& name) {
    for (auto& e : builtin_corpus())
        if (e.name == name) return e;
    return std::nullopt;
}

MapGerm resolve_germ(const std::string& source) {
    if (auto e = find_builtin(source)) return e->germ;
    if (!std::filesystem::exists(source)) {
        std::ostringstream msg;
        msg << "'" << source << "' is neither a builtin germ nor a readable file (builtins:";
        for (const auto& e : builtin_corpus()) msg << ' ' << e.name;
        msg << ')';
        throw InputError(msg.str());
    }
    return load_germ_file(source);
}

std::vector<CriterionReport> Analysis::stages() const {
    std::vector<CriterionReport> out{icp};
    out.push_back(decision);
    return out;
}

Analysis analyze(const MapGerm& g, const SamplerConfig& cfg) {
    cfg.validate();
    Analysis a;
    a.icp = isolated_critical_point_test(g, cfg);
    a.weights = detect_weights(g);
    if (a.weights) {
        if (auto cert = weighted_certificate(g, *a.weights)) {
            cert->config = cfg;
            a.decision = std::move(*cert);
            return a;
        }
    }
    a.decision = g.p() == 2 ? submersion_test(g, cfg) : submersion_rank_test(g, cfg);
    return a;
}

bool ExampleSummary::passed() const {
    for (const auto& o : outcomes)
        if (!o.passed) return false;
    for (const auto& r : regressions)
        if (!r.passed) return false;
    return true;
}

RegressionCheck omega_regression(const MapGerm& seade) {
    RegressionCheck check{"omega-row:seade-ex-2", false, {}};
    const std::vector<std::string> printed{"-x^2*z*(x^2+3*y^2+3*z^2) - 2*y*x*z",
                                           "z*(x^2+z^2-y^2) + 2*y*z*x^3",
                                           "-(y-x^3)*(x^2+y^2+3*z^2)"};
    const auto w = omega(seade).components;
    check.passed = w.size() == printed.size();
    for (std::size_t j = 0; j < w.size() && j < printed.size(); ++j) {
        const Polynomial expected = parse_polynomial(printed[j], seade.var_names());
        if (!(w[j] == expected)) {
            check.passed = false;
            check.detail += "component " + std::to_string(j + 1) + ": got " + w[j].to_string(seade.var_names()) +
                            "; ";
        }
    }
    return check;
}

RegressionCheck weights_regression(const MapGerm& acampo) {
    RegressionCheck check{"weights:acampo", false, {}};
    const auto ws = detect_weights(acampo);
    if (!ws) {
        check.detail = "no weight system found";
        return check;
    }
    check.passed = ws->weights == std::vector<std::int64_t>{1, 1, 1, 1} && ws->degree == 3;
    if (!check.passed) {
        std::ostringstream d;
        d << "got (";
        for (std::size_t j = 0; j < ws->weights.size(); ++j) d << (j ? "," : "") << ws->weights[j];
        d << "), alpha = " << ws->degree;
        check.detail = d.str();
    }
    return check;
}

ExampleSummary verify_examples(const std::vector<CorpusEntry>& corpus, const SamplerConfig& cfg) {
    ExampleSummary summary;
    for (const auto& entry : corpus) {
        SamplerConfig local = cfg;
        if (entry.hold_threshold) local.hold_threshold = *entry.hold_threshold;
        ExampleOutcome o;
        o.name = entry.name;
        o.expected = entry.expected;
        o.expected_certificate = entry.expected_certificate;
        o.analysis = analyze(entry.germ, local);
        o.observed = o.analysis.decision.verdict;
        o.certificate = o.analysis.decision.certificate;
        o.passed = o.observed == o.expected &&
                   (!o.expected_certificate || o.certificate == o.expected_certificate);
        summary.outcomes.push_back(std::move(o));

        if (entry.name == "seade-ex-2") summary.regressions.push_back(omega_regression(entry.germ));
        if (entry.name == "acampo") summary.regressions.push_back(weights_regression(entry.germ));
    }
    return summary;
}

}  // namespace openbook::cli
