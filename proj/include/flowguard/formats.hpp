#pragma once

#include <istream>
#include <string>
#include <vector>

#include "flowguard/anomaly.hpp"
#include "flowguard/corpus.hpp"
#include "flowguard/dictionary.hpp"
#include "flowguard/prediction.hpp"
#include "flowguard/twsa.hpp"

namespace flowguard {

// Annotation CSV. Header `video_id,verb,noun,start_s,end_s`; blank lines are
// skipped. Errors: MalformedRow with the 1-based line number.
TrainingCorpus parse_annotations(std::istream& in);
std::string write_annotations(const TrainingCorpus& corpus);

// Prediction file: one JSON object per line, {"step": n, "topk": [{"label",
// "score"}]}, scores strictly descending, steps strictly increasing.
// Errors: MalformedPrediction with the line number.
std::vector<TopKPrediction> parse_predictions(std::istream& in);
std::string write_predictions(const std::vector<TopKPrediction>& predictions);

// One label per line; '#' starts a comment; blank lines ignored.
ActionDictionary parse_dictionary(std::istream& in, Level level);
std::string write_dictionary(const ActionDictionary& dictionary);

// One label per line; blank lines ignored.
Sequence parse_sequence(std::istream& in);
std::string write_sequence(const Sequence& sequence);

// Session file: one JSON object per line, {"label", "duration_s",
// "recommended": [labels]}. Errors: MalformedSession with the line number.
std::vector<StepRecord> parse_session(std::istream& in);
std::string write_session(const std::vector<StepRecord>& records);

// Score report: one JSON object per assessed step, {index, state, observed,
// r, p, H, c, a, suggestions}, reals at 9 significant digits.
std::string write_score_report(const AnomalyReport& report);
std::vector<StepAssessment> parse_score_report(std::istream& in);

std::string write_twsa_report(const TwsaReport& report, TwsaMode mode);
TwsaReport parse_twsa_report(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace flowguard
