#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "openbook/criteria.hpp"
#include "openbook/fibration.hpp"

namespace openbook::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kNumericError = 3 };

struct AnalysisRequest {
    /// analyze, weights, submersion, link, pages or examples.
    std::string command;
    /// Builtin name or germ file path (unused by `examples`).
    std::string germ_source;
    SamplerConfig sampler;
    TraceConfig trace;
    LinkConfig link;
    double epsilon = 0.5;
    std::optional<std::vector<double>> direction;
    /// submersion: "omega" (p = 2) or "rank".
    std::string route = "auto";
    bool with_link = false;
    bool with_pages = false;
    bool sweep = false;
    std::string format = "json";
    std::optional<std::string> out;
    bool normalize = false;
    /// examples: restrict the corpus to these names.
    std::vector<std::string> only;
    /// examples: replace the corpus by an empty one.
    bool empty_corpus = false;

    /// Throws InputError on an out-of-range override.
    void validate() const;
};

/// Runs one request, writing the report to `out` (or request.out) and
/// diagnostics to `err`. Returns an ExitCode.
int run(const AnalysisRequest& request, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and calls run().
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace openbook::cli
