#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowguard/labels.hpp"

namespace flowguard {

using Sequence = std::vector<std::string>;

// One annotated action interval of a training video.
struct AnnotatedSegment {
    std::string video_id;
    std::string verb;
    std::string noun;
    double start_s = 0.0;
    double end_s = 0.0;

    // Throws MalformedRow-free domain errors: EmptyToken / InvalidLabel for
    // bad tokens, InvalidArgument for a non-finite, negative or empty interval.
    void validate() const;

    double duration() const noexcept { return end_s - start_s; }
    std::string label(Level level) const;

    friend bool operator==(const AnnotatedSegment&, const AnnotatedSegment&) = default;
};

// Segments grouped per video, each group in time order (start, end, verb, noun).
class TrainingCorpus {
public:
    TrainingCorpus() = default;
    explicit TrainingCorpus(std::vector<AnnotatedSegment> segments);

    const std::map<std::string, std::vector<AnnotatedSegment>>& videos() const noexcept
    {
        return videos_;
    }
    bool empty() const noexcept { return videos_.empty(); }
    std::size_t segment_count() const noexcept;

    friend bool operator==(const TrainingCorpus&, const TrainingCorpus&) = default;

private:
    std::map<std::string, std::vector<AnnotatedSegment>> videos_;
};

// One label sequence per video (ordered by video id). Sequences never span videos.
std::vector<Sequence> derive_sequences(const TrainingCorpus& corpus, Level level);

// Median observed duration of every label at one level.
class ReferenceTimes {
public:
    ReferenceTimes() = default;
    ReferenceTimes(Level level, std::map<std::string, double> medians);

    Level level() const noexcept { return level_; }
    const std::map<std::string, double>& medians() const noexcept { return medians_; }

    std::optional<double> find(const std::string& label) const;
    // Throws MissingReferenceTime.
    double at(const std::string& label) const;

private:
    Level level_ = Level::Action;
    std::map<std::string, double> medians_;
};

ReferenceTimes compute_reference_times(const TrainingCorpus& corpus, Level level);

} // namespace flowguard
