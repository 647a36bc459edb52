#include "flowguard/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "flowguard/error.hpp"
#include "flowguard/stats.hpp"

namespace flowguard {

void AnnotatedSegment::validate() const
{
    if (video_id.empty())
        throw Error(ErrorCode::EmptyToken, "segment has an empty video id");
    validate_token(verb);
    validate_token(noun);
    if (!std::isfinite(start_s) || !std::isfinite(end_s))
        throw Error(ErrorCode::InvalidArgument, "segment times must be finite");
    if (start_s < 0.0)
        throw Error(ErrorCode::InvalidArgument, "segment start must be non-negative");
    if (!(end_s > start_s))
        throw Error(ErrorCode::InvalidArgument, "segment end must be after its start");
}

std::string AnnotatedSegment::label(Level level) const
{
    switch (level) {
    case Level::Verb: return verb;
    case Level::Noun: return noun;
    case Level::Action: break;
    }
    return compose_action_label(verb, noun).text();
}

TrainingCorpus::TrainingCorpus(std::vector<AnnotatedSegment> segments)
{
    for (auto& seg : segments) {
        seg.validate();
        videos_[seg.video_id].push_back(std::move(seg));
    }
    for (auto& [id, segs] : videos_) {
        std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) {
            return std::tie(a.start_s, a.end_s, a.verb, a.noun)
                 < std::tie(b.start_s, b.end_s, b.verb, b.noun);
        });
    }
}

std::size_t TrainingCorpus::segment_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& [id, segs] : videos_)
        n += segs.size();
    return n;
}

std::vector<Sequence> derive_sequences(const TrainingCorpus& corpus, Level level)
{
    std::vector<Sequence> out;
    out.reserve(corpus.videos().size());
    for (const auto& [id, segs] : corpus.videos()) {
        Sequence seq;
        seq.reserve(segs.size());
        for (const auto& seg : segs)
            seq.push_back(seg.label(level));
        out.push_back(std::move(seq));
    }
    return out;
}

ReferenceTimes::ReferenceTimes(Level level, std::map<std::string, double> medians)
    : level_(level), medians_(std::move(medians))
{
    for (const auto& [label, t] : medians_) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw Error(ErrorCode::NonPositiveDuration,
                        "reference time for '" + label + "' must be positive");
    }
}

std::optional<double> ReferenceTimes::find(const std::string& label) const
{
    auto it = medians_.find(label);
    if (it == medians_.end())
        return std::nullopt;
    return it->second;
}

double ReferenceTimes::at(const std::string& label) const
{
    auto it = medians_.find(label);
    if (it == medians_.end())
        throw Error(ErrorCode::MissingReferenceTime, "no reference time for '" + label + "'");
    return it->second;
}

ReferenceTimes compute_reference_times(const TrainingCorpus& corpus, Level level)
{
    std::map<std::string, std::vector<double>> durations;
    for (const auto& [id, segs] : corpus.videos()) {
        for (const auto& seg : segs)
            durations[seg.label(level)].push_back(seg.duration());
    }
    std::map<std::string, double> medians;
    for (auto& [label, ds] : durations)
        medians.emplace(label, median(std::move(ds)));
    return ReferenceTimes(level, std::move(medians));
}

} // namespace flowguard
