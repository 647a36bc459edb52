#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flowguard/dictionary.hpp"
#include "flowguard/prediction.hpp"
#include "flowguard/reference_graph.hpp"

namespace fixtures {

// Random (graph row, prediction, dictionary) triple over a pool of <= 12 labels.
struct GuidanceCase {
    flowguard::ReferenceGraph graph;
    std::string state = "S";
    flowguard::TopKPrediction prediction;
    flowguard::ActionDictionary dictionary;
    std::vector<std::string> pool;
};

inline GuidanceCase random_guidance_case(std::mt19937_64& rng)
{
    GuidanceCase c;
    std::uniform_int_distribution<int> pool_size(2, 12);
    const int n = pool_size(rng);
    for (int i = 0; i < n; ++i)
        c.pool.push_back("a" + std::to_string(i));

    std::map<flowguard::ReferenceGraph::EdgeKey, std::uint64_t> counts;
    std::uniform_int_distribution<int> count(1, 20);
    std::bernoulli_distribution coin(0.5);
    for (const auto& l : c.pool)
        if (coin(rng))
            counts[{c.state, l}] = static_cast<std::uint64_t>(count(rng));
    if (counts.empty())
        counts[{c.state, c.pool.front()}] = 1;
    c.graph = flowguard::ReferenceGraph::from_counts(flowguard::Level::Action, c.pool, counts);

    auto shuffled = c.pool;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::uniform_int_distribution<std::size_t> k(1, std::min<std::size_t>(5, shuffled.size()));
    shuffled.resize(k(rng));
    std::vector<flowguard::ScoredLabel> entries;
    for (std::size_t i = 0; i < shuffled.size(); ++i)
        entries.push_back({shuffled[i], 1.0 - 0.1 * static_cast<double>(i)});
    c.prediction = flowguard::TopKPrediction(entries);

    std::set<std::string> dict;
    std::bernoulli_distribution keep(0.7);
    for (const auto& l : c.pool)
        if (keep(rng))
            dict.insert(l);
    c.dictionary = flowguard::ActionDictionary(flowguard::Level::Action, dict);
    return c;
}

inline std::vector<std::string> row_labels(const flowguard::TransitionRow& row)
{
    std::vector<std::string> out;
    for (const auto& s : row.successors)
        out.push_back(s.label);
    return out;
}

} // namespace fixtures
