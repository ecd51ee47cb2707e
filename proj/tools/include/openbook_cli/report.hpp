#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "openbook/fibration.hpp"
#include "openbook_cli/corpus.hpp"

namespace openbook::cli {

using nlohmann::json;

json to_json(const Vec& v);
json to_json(const MapGerm& g);
json to_json(const SamplerConfig& cfg);
json to_json(const TraceConfig& cfg);
json to_json(const LinkConfig& cfg);
json to_json(const WeightSystem& ws);
json to_json(const CriterionReport& r);
json to_json(const LinkSample& link);
json to_json(const PageCloud& page);
/// Summary of a sweep; the transported point clouds go to CSV.
json to_json(const SweepResult& sweep);
json to_json(const ExampleSummary& summary);

/// Skeleton shared by every report: tool, version, command, germ, verdict,
/// certificate, margin_trace, witnesses, config and, unless `normalize`,
/// generated_at.
json report_skeleton(const std::string& command, const json& germ, const json& config, bool normalize);

/// Copies verdict, certificate, margin_trace and witnesses of `r` to the
/// top level of `report`.
void set_decision(json& report, const CriterionReport& r);

/// radius_index,sample_index,epsilon,margin,x1..xm (empty margin = excluded).
void write_samples_csv(std::ostream& out, const CriterionReport& r, std::size_t m);
/// radius_index,epsilon,min_margin,samples_used,excluded.
void write_trace_csv(std::ostream& out, const CriterionReport& r);
/// point_index,x1..xm,psi_norm.
void write_link_csv(std::ostream& out, const LinkSample& link, const NumericGerm& g);
/// angle_index,angle,x1..xm,residual; angle_index 0 is the starting page.
void write_pages_csv(std::ostream& out, const PageCloud& start, const SweepResult* sweep, double theta0);
/// variable,weight rows, then alpha.
void write_weights_csv(std::ostream& out, const MapGerm& g, const WeightSystem& ws);
/// name,expected,observed,certificate,passed.
void write_examples_csv(std::ostream& out, const ExampleSummary& summary);

}  // namespace openbook::cli
