#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowguard/corpus.hpp"
#include "flowguard/reference_graph.hpp"

namespace flowguard {

// How the probability-deviation factor is evaluated.
//  Corrected: 1 - p / max_p, clamped to [0, 1].
//  Literal:   1 - (-p) / max_p, i.e. 1 + p / max_p, kept unclamped for
//             comparison experiments; scores may exceed 1.
enum class ProbabilityFactorMode { Corrected, Literal };

struct AnomalyConfig {
    bool use_certainty = true;
    ProbabilityFactorMode factor2_mode = ProbabilityFactorMode::Corrected;
    std::size_t k = 5;
};

struct StepAssessment {
    std::string state;
    std::string observed;
    std::optional<std::size_t> rank; // 1-based; absent for off-graph transitions
    double probability = 0.0;
    double entropy = 0.0;
    double certainty = 1.0;
    double score = 0.0;
    std::vector<NextAction> suggestions;
    bool unknown_state = false;

    friend bool operator==(const StepAssessment&, const StepAssessment&) = default;
};

struct AnomalyReport {
    std::vector<StepAssessment> assessments; // steps with a positive score
    std::vector<StepAssessment> full_trace;  // every consecutive pair
};

// 1 - (-p ln p) / H, with 1 when H = 0 or p is 0 or 1.
double observed_certainty(double probability, double entropy);

// Scores the transition state -> observed. Off-graph transitions and
// unknown or absorbing states score 1.
StepAssessment assess_transition(const ReferenceGraph& graph, const std::string& state,
                                 const std::string& observed, const AnomalyConfig& config = {});

// Throws SequenceTooShort for fewer than two labels.
AnomalyReport assess_sequence(const ReferenceGraph& graph, const Sequence& sequence,
                              const AnomalyConfig& config = {});

// First min(k, |row|) successors of `state`. Throws InvalidArgument for k = 0.
std::vector<NextAction> topk_next(const ReferenceGraph& graph, const std::string& state,
                                  std::size_t k);

} // namespace flowguard
