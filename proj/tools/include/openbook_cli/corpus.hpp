#pragma once

#include <optional>
#include <string>
#include <vector>

#include "openbook/criteria.hpp"
#include "openbook/germ.hpp"

namespace openbook::cli {

struct CorpusEntry {
    std::string name;
    std::string description;
    MapGerm germ;
    Verdict expected;
    /// Set when the verdict is expected to come from the weighted certificate.
    std::optional<std::string> expected_certificate;
    bool holomorphic = false;
    /// Per-entry override of SamplerConfig::hold_threshold.
    std::optional<double> hold_threshold;
};

/// The shipped examples, in a fixed order.
std::vector<CorpusEntry> builtin_corpus();

std::optional<CorpusEntry> find_builtin(const std::string& name);

/// A builtin name, or else a path to a germ file.
MapGerm resolve_germ(const std::string& source);

/// Result of the analyze pipeline: isolated-critical-point check, weight
/// detection, then the certificate or the sampling submersion test.
struct Analysis {
    CriterionReport icp;
    std::optional<WeightSystem> weights;
    /// The report that decided the verdict.
    CriterionReport decision;
    std::vector<CriterionReport> stages() const;
};

Analysis analyze(const MapGerm& g, const SamplerConfig& cfg);

struct ExampleOutcome {
    std::string name;
    Verdict expected;
    Verdict observed;
    std::optional<std::string> expected_certificate;
    std::optional<std::string> certificate;
    bool passed = false;
    Analysis analysis;
};

struct RegressionCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExampleSummary {
    std::vector<ExampleOutcome> outcomes;
    std::vector<RegressionCheck> regressions;
    bool passed() const;
};

/// Exact omega row of seade-ex-2.
RegressionCheck omega_regression(const MapGerm& seade);
/// Weight system ((1,1,1,1), 3) of acampo.
RegressionCheck weights_regression(const MapGerm& acampo);

/// Runs every entry against its expected verdict, plus the exact symbolic
/// regressions for the entries that have one. An empty corpus passes.
ExampleSummary verify_examples(const std::vector<CorpusEntry>& corpus, const SamplerConfig& cfg);

}  // namespace openbook::cli
