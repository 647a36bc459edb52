#pragma once

#include "flowguard/anomaly.hpp"
#include "flowguard/guidance.hpp"
#include "flowguard/prediction.hpp"
#include "flowguard/reference_graph.hpp"
#include "flowguard/twsa.hpp"
#include "json.hpp"

// JSON encodings shared by the report files and the HTTP API. Reals are
// rounded to 9 significant digits.
namespace flowguard {

using Json = nlohmann::json;

Json to_json(const NextAction& next);
Json to_json(const std::vector<NextAction>& actions);
Json to_json(const TransitionRow& row);
Json to_json(const StepAssessment& step);
Json to_json(const GuidanceOutcome& outcome);
Json to_json(const TopKPrediction& prediction);
Json to_json(const BoxSummary& box);
Json to_json(const TwsaReport& report, TwsaMode mode);

// Throws InvalidArgument with the offending field on shape errors.
StepAssessment step_assessment_from_json(const Json& j);
TwsaReport twsa_report_from_json(const Json& j);

} // namespace flowguard
