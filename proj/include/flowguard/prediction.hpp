#pragma once

#include <string>
#include <vector>

namespace flowguard {

struct ScoredLabel {
    std::string label;
    double score = 0.0;

    friend bool operator==(const ScoredLabel&, const ScoredLabel&) = default;
};

// Ordered Top-k output of an anticipation model. Entries are ordered by score
// descending with equal scores broken by label ascending; labels are distinct.
class TopKPrediction {
public:
    static constexpr std::size_t kMaxEntries = 5;

    TopKPrediction() = default;
    // Sorts into canonical order; throws MalformedPrediction on duplicate
    // labels, more than kMaxEntries entries, or non-finite scores.
    explicit TopKPrediction(std::vector<ScoredLabel> entries);

    const std::vector<ScoredLabel>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    // 1-based position of `label`, or 0 when absent.
    std::size_t rank_of(const std::string& label) const;
    bool contains(const std::string& label) const { return rank_of(label) != 0; }
    std::vector<std::string> labels() const;

    friend bool operator==(const TopKPrediction&, const TopKPrediction&) = default;

private:
    std::vector<ScoredLabel> entries_;
};

} // namespace flowguard
