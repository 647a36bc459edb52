#include "flowguard/guidance.hpp"

#include <optional>
#include <tuple>

#include "flowguard/error.hpp"

namespace flowguard {

GuidanceOutcome recommend_next(const ReferenceGraph& graph, const std::string& state,
                               const TopKPrediction& prediction,
                               const ActionDictionary& dictionary)
{
    if (prediction.empty())
        throw Error(ErrorCode::InvalidArgument, "guidance needs at least one predicted action");
    const TransitionRow& row = graph.row(state);
    if (row.empty())
        throw Error(ErrorCode::UnknownState, "state '" + state + "' has no successors");

    std::vector<NextAction> graph_valid;
    std::optional<Recommendation> best;
    for (std::size_t i = 0; i < row.size(); ++i) {
        const auto& s = row.successors[i];
        if (!dictionary.contains(s.label))
            continue;
        graph_valid.push_back({s.label, s.probability});
        const std::size_t model_rank = prediction.rank_of(s.label);
        if (model_rank == 0)
            continue;
        Recommendation candidate{s.label, i + 1, model_rank, i + 1 + model_rank};
        if (!best
            || std::tie(candidate.rank_sum, candidate.graph_rank, candidate.label)
                   < std::tie(best->rank_sum, best->graph_rank, best->label))
            best = std::move(candidate);
    }
    if (best)
        return *best;
    return RepeatRequest{std::move(graph_valid), false};
}

GuidanceOutcome guide(const ReferenceGraph& graph, const std::string& state,
                      const TopKPrediction& prediction, const ActionDictionary& dictionary)
{
    try {
        return recommend_next(graph, state, prediction, dictionary);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UnknownState)
            throw;
        return RepeatRequest{{}, true};
    }
}

ActionDictionary default_dictionary(const ReferenceGraph& graph)
{
    return ActionDictionary(graph.level(), {graph.vocab().begin(), graph.vocab().end()});
}

} // namespace flowguard
