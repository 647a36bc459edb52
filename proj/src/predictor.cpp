#include "flowguard/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "flowguard/anomaly.hpp"
#include "flowguard/error.hpp"

namespace flowguard {

FileReplaySource::FileReplaySource(std::vector<TopKPrediction> records)
    : records_(std::move(records))
{
}

TopKPrediction FileReplaySource::next_topk()
{
    if (cursor_ >= records_.size())
        throw Error(ErrorCode::SourceExhausted,
                    "prediction replay exhausted after " + std::to_string(records_.size())
                        + " records");
    return records_[cursor_++];
}

NoisyOracleSource::NoisyOracleSource(Sequence ground_truth, std::vector<std::string> vocabulary,
                                     double epsilon, std::uint64_t seed, bool drop_truth)
    : truth_(std::move(ground_truth)), epsilon_(epsilon), drop_truth_(drop_truth), rng_(seed)
{
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "corruption probability must be in [0, 1]");
    std::set<std::string> vocab(vocabulary.begin(), vocabulary.end());
    for (const auto& label : truth_) {
        if (!vocab.contains(label))
            throw Error(ErrorCode::UnknownLabel,
                        "ground-truth label '" + label + "' is not in the vocabulary");
    }
    vocab_.assign(vocab.begin(), vocab.end());
}

TopKPrediction NoisyOracleSource::next_topk()
{
    if (cursor_ >= truth_.size())
        throw Error(ErrorCode::SourceExhausted, "noisy oracle ran past its ground truth");
    const std::string& truth = truth_[cursor_++];
    const std::size_t k = std::min(TopKPrediction::kMaxEntries, vocab_.size());
    const bool corrupt = rng_.unit() < epsilon_ && k > 1;

    std::vector<std::string> others;
    others.reserve(vocab_.size() - 1);
    for (const auto& v : vocab_) {
        if (v != truth)
            others.push_back(v);
    }
    const std::size_t fillers = corrupt && drop_truth_ ? k : k - 1;
    // Partial Fisher-Yates: the first `fillers` slots become a uniform sample.
    for (std::size_t i = 0; i < fillers && i < others.size(); ++i) {
        const std::size_t j = i + rng_.below(others.size() - i);
        std::swap(others[i], others[j]);
    }
    others.resize(std::min(fillers, others.size()));

    std::vector<std::string> ranked;
    if (!corrupt) {
        ranked.push_back(truth);
        ranked.insert(ranked.end(), others.begin(), others.end());
    } else if (drop_truth_) {
        ranked = std::move(others);
    } else {
        ranked = std::move(others);
        const std::size_t slot = 1 + rng_.below(k - 1);
        ranked.insert(ranked.begin() + static_cast<std::ptrdiff_t>(slot), truth);
    }

    const double n = static_cast<double>(ranked.size());
    const double norm = n * (n + 1.0) / 2.0;
    std::vector<ScoredLabel> entries;
    entries.reserve(ranked.size());
    for (std::size_t i = 0; i < ranked.size(); ++i)
        entries.push_back({ranked[i], (n - static_cast<double>(i)) / norm});
    return TopKPrediction(std::move(entries));
}

MarkovSamplerSource::MarkovSamplerSource(std::shared_ptr<const ReferenceGraph> graph,
                                         std::uint64_t seed, std::string start_state,
                                         std::size_t k)
    : graph_(std::move(graph)), rng_(seed), current_(std::move(start_state)),
      k_(std::clamp<std::size_t>(k, 1, TopKPrediction::kMaxEntries))
{
    if (!graph_)
        throw Error(ErrorCode::InvalidArgument, "Markov sampler needs a graph");
}

TopKPrediction MarkovSamplerSource::next_topk()
{
    const TransitionRow& row = graph_->row(current_);
    if (row.empty())
        throw Error(ErrorCode::SourceExhausted,
                    "Markov sampler reached state '" + current_ + "' with no successors");
    std::vector<ScoredLabel> entries;
    for (const auto& next : topk_next(*graph_, current_, k_))
        entries.push_back({next.label, next.probability});
    current_ = sample_successor(row, rng_);
    return TopKPrediction(std::move(entries));
}

const std::string& sample_successor(const TransitionRow& row, SeededRng& rng)
{
    if (row.empty())
        throw Error(ErrorCode::UnknownState, "cannot sample from an empty row");
    std::uint64_t total = 0;
    for (const auto& s : row.successors)
        total += s.count;
    std::uint64_t draw = rng.below(total);
    for (const auto& s : row.successors) {
        if (draw < s.count)
            return s.label;
        draw -= s.count;
    }
    return row.successors.back().label;
}

Sequence sample_episode(const ReferenceGraph& graph, std::size_t length, std::uint64_t seed)
{
    if (length < 2)
        throw Error(ErrorCode::InvalidArgument, "episode length must be at least 2");
    const auto starts = graph.states_with_successors();
    if (starts.empty())
        throw Error(ErrorCode::EmptyGraph, "graph has no transitions to sample");
    SeededRng rng(seed);
    Sequence seq;
    seq.reserve(length);
    seq.push_back(starts[rng.below(starts.size())]);
    while (seq.size() < length) {
        const TransitionRow& row = graph.row(seq.back());
        if (row.empty())
            break;
        seq.push_back(sample_successor(row, rng));
    }
    return seq;
}

} // namespace flowguard
