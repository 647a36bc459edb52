#include "flowguard/json_codec.hpp"

#include "flowguard/error.hpp"
#include "flowguard/numfmt.hpp"

namespace flowguard {
namespace {

double r9(double v) { return round_sig(v, kReportDigits); }

const Json& need(const Json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end())
        throw Error(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
    return *it;
}

double need_number(const Json& j, const char* key)
{
    const Json& v = need(j, key);
    if (!v.is_number())
        throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::string need_string(const Json& j, const char* key)
{
    const Json& v = need(j, key);
    if (!v.is_string())
        throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const Json& j, const char* key)
{
    std::vector<double> out;
    for (const auto& v : need(j, key))
        out.push_back(v.get<double>());
    return out;
}

} // namespace

Json to_json(const NextAction& next)
{
    return {{"label", next.label}, {"p", r9(next.probability)}};
}

Json to_json(const std::vector<NextAction>& actions)
{
    auto arr = Json::array();
    for (const auto& a : actions)
        arr.push_back(to_json(a));
    return arr;
}

Json to_json(const TransitionRow& row)
{
    auto succ = Json::array();
    for (const auto& s : row.successors)
        succ.push_back({{"label", s.label}, {"count", s.count}, {"p", r9(s.probability)}});
    return {{"state", row.state}, {"successors", std::move(succ)},
            {"entropy", r9(row_entropy(row))}};
}

Json to_json(const StepAssessment& step)
{
    Json j{{"state", step.state},
           {"observed", step.observed},
           {"p", r9(step.probability)},
           {"H", r9(step.entropy)},
           {"c", r9(step.certainty)},
           {"a", r9(step.score)},
           {"suggestions", to_json(step.suggestions)}};
    j["r"] = step.rank ? Json(*step.rank) : Json(nullptr);
    return j;
}

Json to_json(const GuidanceOutcome& outcome)
{
    if (const auto* rec = std::get_if<Recommendation>(&outcome)) {
        return {{"kind", "recommend"},
                {"label", rec->label},
                {"graph_rank", rec->graph_rank},
                {"model_rank", rec->model_rank},
                {"rank_sum", rec->rank_sum}};
    }
    const auto& rep = std::get<RepeatRequest>(outcome);
    return {{"kind", "repeat"},
            {"suggestions", to_json(rep.suggestions)},
            {"unknown_state", rep.unknown_state}};
}

Json to_json(const TopKPrediction& prediction)
{
    auto arr = Json::array();
    for (const auto& e : prediction.entries())
        arr.push_back({{"label", e.label}, {"score", r9(e.score)}});
    return arr;
}

Json to_json(const BoxSummary& box)
{
    auto outliers = Json::array();
    for (double v : box.outliers)
        outliers.push_back(r9(v));
    return {{"min", r9(box.min)},       {"q1", r9(box.q1)},   {"median", r9(box.median)},
            {"q3", r9(box.q3)},         {"max", r9(box.max)}, {"outliers", std::move(outliers)},
            {"count", box.count}};
}

Json to_json(const TwsaReport& report, TwsaMode mode)
{
    auto steps = Json::array();
    for (std::size_t i = 0; i < report.steps.size(); ++i) {
        const auto& s = report.steps[i];
        steps.push_back({{"index", i},
                         {"label", s.label},
                         {"reference_s", r9(s.reference_s)},
                         {"actual_s", r9(s.actual_s)},
                         {"correct", s.correct},
                         {"score", r9(s.score)}});
    }
    Json stats = Json::object();
    for (const auto& [label, box] : report.class_stats)
        stats[label] = to_json(box);
    return {{"mode", std::string(to_string(mode))},
            {"overall", r9(report.overall)},
            {"steps", std::move(steps)},
            {"class_stats", std::move(stats)}};
}

StepAssessment step_assessment_from_json(const Json& j)
{
    StepAssessment s;
    s.state = need_string(j, "state");
    s.observed = need_string(j, "observed");
    const Json& r = need(j, "r");
    if (!r.is_null()) {
        if (!r.is_number_unsigned())
            throw Error(ErrorCode::InvalidArgument, "field 'r' must be a positive integer or null");
        s.rank = r.get<std::size_t>();
    }
    s.probability = need_number(j, "p");
    s.entropy = need_number(j, "H");
    s.certainty = need_number(j, "c");
    s.score = need_number(j, "a");
    for (const auto& n : need(j, "suggestions"))
        s.suggestions.push_back({need_string(n, "label"), need_number(n, "p")});
    s.unknown_state = !s.rank && s.suggestions.empty();
    return s;
}

TwsaReport twsa_report_from_json(const Json& j)
{
    TwsaReport report;
    report.overall = need_number(j, "overall");
    for (const auto& s : need(j, "steps")) {
        report.steps.push_back({need_string(s, "label"), need_number(s, "reference_s"),
                                need_number(s, "actual_s"), need(s, "correct").get<bool>(),
                                need_number(s, "score")});
    }
    for (const auto& [label, b] : need(j, "class_stats").items()) {
        BoxSummary box;
        box.min = need_number(b, "min");
        box.q1 = need_number(b, "q1");
        box.median = need_number(b, "median");
        box.q3 = need_number(b, "q3");
        box.max = need_number(b, "max");
        box.outliers = numbers(b, "outliers");
        box.count = need(b, "count").get<std::size_t>();
        report.class_stats.emplace(label, std::move(box));
    }
    return report;
}

} // namespace flowguard
