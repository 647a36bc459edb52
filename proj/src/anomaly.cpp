#include "flowguard/anomaly.hpp"

#include <algorithm>
#include <cmath>

#include "flowguard/error.hpp"

namespace flowguard {

double observed_certainty(double probability, double entropy)
{
    if (entropy <= 0.0)
        return 1.0;
    const double c = 1.0 - entropy_term(probability) / entropy;
    return std::clamp(c, 0.0, 1.0);
}

std::vector<NextAction> topk_next(const ReferenceGraph& graph, const std::string& state,
                                  std::size_t k)
{
    if (k == 0)
        throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    const TransitionRow& row = graph.row(state);
    std::vector<NextAction> out;
    const std::size_t n = std::min(k, row.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({row.successors[i].label, row.successors[i].probability});
    return out;
}

StepAssessment assess_transition(const ReferenceGraph& graph, const std::string& state,
                                 const std::string& observed, const AnomalyConfig& config)
{
    StepAssessment step;
    step.state = state;
    step.observed = observed;
    step.suggestions = topk_next(graph, state, config.k);

    const TransitionRow& row = graph.row(state);
    if (row.empty()) {
        step.unknown_state = true;
        step.score = 1.0;
        return step;
    }
    step.entropy = row_entropy(row);

    const auto pos = row.position(observed);
    if (!pos) {
        step.score = 1.0;
        return step;
    }

    const std::size_t r = *pos + 1;
    step.rank = r;
    step.probability = row.successors[*pos].probability;

    const double rank_factor =
        r == 1 ? 0.0 : std::log(static_cast<double>(r)) / std::log(static_cast<double>(row.size()));
    const double ratio = step.probability / row.max_probability();
    const double prob_factor = config.factor2_mode == ProbabilityFactorMode::Corrected
        ? std::clamp(1.0 - ratio, 0.0, 1.0)
        : 1.0 + ratio;
    step.certainty = config.use_certainty ? observed_certainty(step.probability, step.entropy) : 1.0;
    step.score = rank_factor * prob_factor * step.certainty;
    return step;
}

AnomalyReport assess_sequence(const ReferenceGraph& graph, const Sequence& sequence,
                              const AnomalyConfig& config)
{
    if (sequence.size() < 2)
        throw Error(ErrorCode::SequenceTooShort,
                    "anomaly scoring needs at least two labels, got "
                        + std::to_string(sequence.size()));
    AnomalyReport report;
    report.full_trace.reserve(sequence.size() - 1);
    for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
        auto step = assess_transition(graph, sequence[i], sequence[i + 1], config);
        if (step.score > 0.0)
            report.assessments.push_back(step);
        report.full_trace.push_back(std::move(step));
    }
    return report;
}

} // namespace flowguard
