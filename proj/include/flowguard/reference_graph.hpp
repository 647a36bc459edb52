#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flowguard/corpus.hpp"
#include "flowguard/labels.hpp"

namespace flowguard {

struct Successor {
    std::string label;
    std::uint64_t count = 0;
    double probability = 0.0; // count over the row total

    friend bool operator==(const Successor&, const Successor&) = default;
};

// A candidate next action with its row probability.
struct NextAction {
    std::string label;
    double probability = 0.0;

    friend bool operator==(const NextAction&, const NextAction&) = default;
};

// Outgoing transitions of one state, most probable first; equal
// probabilities are ordered by label.
struct TransitionRow {
    std::string state;
    std::vector<Successor> successors;

    bool empty() const noexcept { return successors.empty(); }
    std::size_t size() const noexcept { return successors.size(); }
    // 0-based index of `label` in the sorted row.
    std::optional<std::size_t> position(std::string_view label) const;
    double max_probability() const noexcept
    {
        return successors.empty() ? 0.0 : successors.front().probability;
    }

    friend bool operator==(const TransitionRow&, const TransitionRow&) = default;
};

struct GraphEdge {
    std::string src;
    std::string dst;
    std::uint64_t count = 0;
    double weight = 0.0; // count / total_transitions

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// First-order Markov reference graph: transition counts between consecutive
// labels, globally normalised weights and per-state transition rows.
class ReferenceGraph {
public:
    using EdgeKey = std::pair<std::string, std::string>;

    ReferenceGraph() = default;

    // Validates and assembles a graph from explicit counts. Labels referenced
    // by an edge are added to the vocabulary. Throws EmptyGraph when no edge
    // has a positive count, InvalidArgument on a zero count.
    static ReferenceGraph from_counts(Level level, std::vector<std::string> vocab,
                                      const std::map<EdgeKey, std::uint64_t>& counts);

    Level level() const noexcept { return level_; }
    // Sorted, distinct.
    const std::vector<std::string>& vocab() const noexcept { return vocab_; }
    bool has_node(std::string_view label) const;
    std::uint64_t total_transitions() const noexcept { return total_; }
    const std::map<EdgeKey, std::uint64_t>& counts() const noexcept { return counts_; }

    std::uint64_t count(const std::string& src, const std::string& dst) const;
    double weight(const std::string& src, const std::string& dst) const;
    std::vector<GraphEdge> edges() const;

    // Empty row for unknown or absorbing states.
    const TransitionRow& row(const std::string& state) const;
    // States with at least one outgoing edge, sorted.
    std::vector<std::string> states_with_successors() const;

    friend bool operator==(const ReferenceGraph& a, const ReferenceGraph& b)
    {
        return a.level_ == b.level_ && a.vocab_ == b.vocab_ && a.total_ == b.total_
            && a.counts_ == b.counts_;
    }

private:
    Level level_ = Level::Action;
    std::vector<std::string> vocab_;
    std::map<EdgeKey, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::map<std::string, TransitionRow, std::less<>> rows_;
};

// Accumulates transitions over consecutive pairs inside each sequence.
// Throws EmptyGraph if no sequence has two or more labels.
ReferenceGraph build_reference_graph(const std::vector<Sequence>& sequences,
                                     Level level = Level::Action);

TransitionRow transition_row(const ReferenceGraph& graph, const std::string& state);

// -p ln p, with 0 ln 0 = 0.
double entropy_term(double p);

// Natural-log Shannon entropy of the row's successor distribution; 0 for an
// empty row.
double row_entropy(const TransitionRow& row);

// Every count multiplied by `factor` (> 0).
ReferenceGraph scale_counts(const ReferenceGraph& graph, std::uint64_t factor);

// Canonical JSON document: sorted keys, edges sorted by (src, dst), reals at
// 12 significant digits, two-space indent, trailing newline.
std::string serialize_graph(const ReferenceGraph& graph);
// Throws MalformedGraphFile; the message carries a byte offset for syntax
// errors and a JSON path for schema errors.
ReferenceGraph deserialize_graph(std::string_view text);

} // namespace flowguard
