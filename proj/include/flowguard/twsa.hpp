#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowguard/corpus.hpp"
#include "flowguard/stats.hpp"

namespace flowguard {

// How the correctness indicator of a step is resolved.
//  Top5Membership: the performed label is in that step's recommended set.
//  StrictSequence: every step is correct iff the whole performed sequence
//                  equals the expected sequence.
enum class TwsaMode { Top5Membership, StrictSequence };

std::string_view to_string(TwsaMode mode);
TwsaMode parse_twsa_mode(std::string_view text); // "top5" | "strict"

struct StepRecord {
    std::string label;
    double duration_s = 0.0;
    std::vector<std::string> recommended;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct StepScore {
    std::string label;
    double reference_s = 0.0;
    double actual_s = 0.0;
    bool correct = false;
    double score = 0.0;

    friend bool operator==(const StepScore&, const StepScore&) = default;
};

struct TwsaReport {
    std::vector<StepScore> steps;
    std::map<std::string, BoxSummary> class_stats;
    double overall = 0.0;

    std::vector<double> step_scores() const;
};

// min(t_ref / t_actual, 1) when correct, else 0. Throws NonPositiveDuration.
double step_twsa(double reference_s, double actual_s, bool correct);

// `expected` is required in StrictSequence mode and ignored otherwise.
// Throws MissingReferenceTime, NonPositiveDuration, InvalidArgument.
TwsaReport evaluate_session(const std::vector<StepRecord>& records,
                            const ReferenceTimes& reference_times,
                            TwsaMode mode = TwsaMode::Top5Membership,
                            const std::optional<Sequence>& expected = std::nullopt);

} // namespace flowguard
