#include "flowguard/twsa.hpp"

#include <algorithm>
#include <cmath>

#include "flowguard/error.hpp"

namespace flowguard {

std::string_view to_string(TwsaMode mode)
{
    return mode == TwsaMode::StrictSequence ? "strict" : "top5";
}

TwsaMode parse_twsa_mode(std::string_view text)
{
    if (text == "top5")
        return TwsaMode::Top5Membership;
    if (text == "strict")
        return TwsaMode::StrictSequence;
    throw Error(ErrorCode::InvalidArgument,
                "unknown TWSA mode '" + std::string(text) + "' (expected top5 or strict)");
}

std::vector<double> TwsaReport::step_scores() const
{
    std::vector<double> out;
    out.reserve(steps.size());
    for (const auto& s : steps)
        out.push_back(s.score);
    return out;
}

double step_twsa(double reference_s, double actual_s, bool correct)
{
    if (!(reference_s > 0.0) || !(actual_s > 0.0) || !std::isfinite(reference_s)
        || !std::isfinite(actual_s))
        throw Error(ErrorCode::NonPositiveDuration, "TWSA durations must be positive and finite");
    if (!correct)
        return 0.0;
    return std::min(reference_s / actual_s, 1.0);
}

TwsaReport evaluate_session(const std::vector<StepRecord>& records,
                            const ReferenceTimes& reference_times, TwsaMode mode,
                            const std::optional<Sequence>& expected)
{
    if (records.empty())
        throw Error(ErrorCode::InvalidArgument, "TWSA needs at least one step");
    if (mode == TwsaMode::StrictSequence && !expected)
        throw Error(ErrorCode::InvalidArgument, "strict TWSA mode needs an expected sequence");

    bool sequence_matches = false;
    if (mode == TwsaMode::StrictSequence) {
        sequence_matches = expected->size() == records.size()
            && std::equal(records.begin(), records.end(), expected->begin(),
                          [](const StepRecord& r, const std::string& e) { return r.label == e; });
    }

    TwsaReport report;
    report.steps.reserve(records.size());
    std::map<std::string, std::vector<double>> per_class;
    for (const auto& rec : records) {
        StepScore s;
        s.label = rec.label;
        s.reference_s = reference_times.at(rec.label);
        s.actual_s = rec.duration_s;
        s.correct = mode == TwsaMode::StrictSequence
            ? sequence_matches
            : std::find(rec.recommended.begin(), rec.recommended.end(), rec.label)
                  != rec.recommended.end();
        s.score = step_twsa(s.reference_s, s.actual_s, s.correct);
        per_class[s.label].push_back(s.score);
        report.steps.push_back(std::move(s));
    }
    // Summing in sorted order makes the mean independent of record order.
    auto scores = report.step_scores();
    std::sort(scores.begin(), scores.end());
    double sum = 0.0;
    for (double v : scores)
        sum += v;
    report.overall = sum / static_cast<double>(scores.size());
    for (const auto& [label, scores] : per_class)
        report.class_stats.emplace(label, box_summary(scores));
    return report;
}

} // namespace flowguard
