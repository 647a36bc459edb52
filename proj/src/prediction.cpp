#include "flowguard/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "flowguard/error.hpp"
#include "flowguard/labels.hpp"

namespace flowguard {

TopKPrediction::TopKPrediction(std::vector<ScoredLabel> entries)
    : entries_(std::move(entries))
{
    if (entries_.size() > kMaxEntries)
        throw Error(ErrorCode::MalformedPrediction,
                    "prediction has " + std::to_string(entries_.size()) + " entries (max 5)");
    std::set<std::string> seen;
    for (const auto& e : entries_) {
        try {
            validate_token(e.label);
        } catch (const Error& err) {
            throw Error(ErrorCode::MalformedPrediction, err.what());
        }
        if (!std::isfinite(e.score))
            throw Error(ErrorCode::MalformedPrediction, "non-finite score for '" + e.label + "'");
        if (!seen.insert(e.label).second)
            throw Error(ErrorCode::MalformedPrediction, "duplicate label '" + e.label + "'");
    }
    std::stable_sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return a.label < b.label;
    });
}

std::size_t TopKPrediction::rank_of(const std::string& label) const
{
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].label == label)
            return i + 1;
    }
    return 0;
}

std::vector<std::string> TopKPrediction::labels() const
{
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_)
        out.push_back(e.label);
    return out;
}

} // namespace flowguard
