#pragma once

#include <string>
#include <variant>
#include <vector>

#include "flowguard/dictionary.hpp"
#include "flowguard/prediction.hpp"
#include "flowguard/reference_graph.hpp"

namespace flowguard {

// Candidate present in the dictionary, among the graph successors and in the
// prediction list, with the smallest combined rank.
struct Recommendation {
    std::string label;
    std::size_t graph_rank = 0; // 1-based position in the sorted transition row
    std::size_t model_rank = 0; // 1-based position in the unfiltered Top-k list
    std::size_t rank_sum = 0;

    friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

// Null case: ask the operator to repeat the previous action and offer the
// dictionary-filtered successors in row order.
struct RepeatRequest {
    std::vector<NextAction> suggestions;
    // Set when the state had no successors at all (guidance impossible).
    bool unknown_state = false;

    friend bool operator==(const RepeatRequest&, const RepeatRequest&) = default;
};

using GuidanceOutcome = std::variant<Recommendation, RepeatRequest>;

inline bool is_repeat(const GuidanceOutcome& g) { return std::holds_alternative<RepeatRequest>(g); }

// Fuses the transition row of `state` with a Top-k prediction through the
// dictionary. Ties on the rank sum go to the better graph rank, then the
// smaller label. Throws UnknownState when `state` has no successors and
// InvalidArgument on an empty prediction.
GuidanceOutcome recommend_next(const ReferenceGraph& graph, const std::string& state,
                               const TopKPrediction& prediction,
                               const ActionDictionary& dictionary);

// recommend_next, but an UnknownState is folded into a RepeatRequest with no
// suggestions and `unknown_state` set.
GuidanceOutcome guide(const ReferenceGraph& graph, const std::string& state,
                      const TopKPrediction& prediction, const ActionDictionary& dictionary);

// Full training vocabulary of the graph.
ActionDictionary default_dictionary(const ReferenceGraph& graph);

} // namespace flowguard
