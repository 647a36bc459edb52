#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "flowguard/corpus.hpp"
#include "flowguard/prediction.hpp"
#include "flowguard/random.hpp"
#include "flowguard/reference_graph.hpp"

namespace flowguard {

// Stand-in for an action-anticipation model: yields one Top-k list per query.
// Sources keep a cursor and are meant for a single consumer.
class PredictionSource {
public:
    virtual ~PredictionSource() = default;

    // Throws SourceExhausted when no further prediction is available.
    virtual TopKPrediction next_topk() = 0;

    // Informs the source of the operator's current state. Only sources that
    // model the workflow themselves use it.
    virtual void sync(const std::string& /*state*/) {}
};

// Replays recorded predictions in order.
class FileReplaySource final : public PredictionSource {
public:
    explicit FileReplaySource(std::vector<TopKPrediction> records);

    TopKPrediction next_topk() override;
    std::size_t remaining() const noexcept { return records_.size() - cursor_; }

private:
    std::vector<TopKPrediction> records_;
    std::size_t cursor_ = 0;
};

// Simulates a model that knows the ground truth. With probability 1 - epsilon
// the true label is ranked first; otherwise it lands at a random rank > 1
// (or is left out entirely when drop_truth is set). Remaining slots are
// distinct random vocabulary labels. Scores are (k - i) / (k (k + 1) / 2).
class NoisyOracleSource final : public PredictionSource {
public:
    NoisyOracleSource(Sequence ground_truth, std::vector<std::string> vocabulary, double epsilon,
                      std::uint64_t seed, bool drop_truth = false);

    TopKPrediction next_topk() override;

private:
    Sequence truth_;
    std::vector<std::string> vocab_;
    double epsilon_;
    bool drop_truth_;
    SeededRng rng_;
    std::size_t cursor_ = 0;
};

// Predicts the Top-k successors of its current state (scores are the row
// probabilities), then moves to a successor sampled from the row.
class MarkovSamplerSource final : public PredictionSource {
public:
    MarkovSamplerSource(std::shared_ptr<const ReferenceGraph> graph, std::uint64_t seed,
                        std::string start_state, std::size_t k = TopKPrediction::kMaxEntries);

    TopKPrediction next_topk() override;
    void sync(const std::string& state) override { current_ = state; }
    const std::string& current_state() const noexcept { return current_; }

private:
    std::shared_ptr<const ReferenceGraph> graph_;
    SeededRng rng_;
    std::string current_;
    std::size_t k_;
};

// Draws a successor of a non-empty row in proportion to its counts.
const std::string& sample_successor(const TransitionRow& row, SeededRng& rng);

// Random walk of up to `length` labels. The start state is uniform over the
// states with successors; the walk stops early at an absorbing state.
// Throws EmptyGraph, InvalidArgument (length < 2).
Sequence sample_episode(const ReferenceGraph& graph, std::size_t length, std::uint64_t seed);

} // namespace flowguard
