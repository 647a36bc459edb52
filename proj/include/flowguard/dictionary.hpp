#pragma once

#include <set>
#include <string>

#include "flowguard/labels.hpp"

namespace flowguard {

// Context-valid labels gating both graph successors and model predictions.
class ActionDictionary {
public:
    ActionDictionary() = default;
    ActionDictionary(Level level, std::set<std::string> members);

    Level level() const noexcept { return level_; }
    const std::set<std::string>& members() const noexcept { return members_; }
    bool contains(const std::string& label) const { return members_.contains(label); }
    std::size_t size() const noexcept { return members_.size(); }

    // Throws UnknownLabel naming the first member outside `vocabulary`.
    template <typename Range>
    void require_subset_of(const Range& vocabulary) const;

    friend bool operator==(const ActionDictionary&, const ActionDictionary&) = default;

private:
    Level level_ = Level::Action;
    std::set<std::string> members_;
};

} // namespace flowguard

#include "flowguard/error.hpp"

#include <algorithm>

namespace flowguard {

template <typename Range>
void ActionDictionary::require_subset_of(const Range& vocabulary) const
{
    for (const auto& m : members_) {
        if (std::find(std::begin(vocabulary), std::end(vocabulary), m) == std::end(vocabulary))
            throw Error(ErrorCode::UnknownLabel,
                        "dictionary label '" + m + "' is not in the graph vocabulary");
    }
}

} // namespace flowguard
