#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "flowguard/corpus.hpp"
#include "flowguard/formats.hpp"
#include "flowguard/reference_graph.hpp"

namespace fixtures {

inline const flowguard::Sequence kFixtureSequence{"A", "B", "C", "A", "B", "D", "A", "B", "C"};

inline flowguard::ReferenceGraph fixture_graph()
{
    return flowguard::build_reference_graph({kFixtureSequence}, flowguard::Level::Verb);
}

// The fixture sequence as one annotated video, verbs A..D on noun "part".
// Verb durations: A {2, 2, 4}, B {1, 1, 3}, C {3, 5}, D {4}.
inline const char* kFixtureAnnotations =
    "video_id,verb,noun,start_s,end_s\n"
    "v1,A,part,0,2\n"
    "v1,B,part,2,3\n"
    "v1,C,part,3,6\n"
    "v1,A,part,6,8\n"
    "v1,B,part,8,9\n"
    "v1,D,part,9,13\n"
    "v1,A,part,13,17\n"
    "v1,B,part,17,20\n"
    "v1,C,part,20,25\n";

inline flowguard::TrainingCorpus fixture_corpus()
{
    std::istringstream in(kFixtureAnnotations);
    return flowguard::parse_annotations(in);
}

inline std::string source_path(const std::string& rel)
{
    return std::string(FLOWGUARD_SOURCE_DIR) + "/" + rel;
}

} // namespace fixtures
