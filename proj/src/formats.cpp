#include "flowguard/formats.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "flowguard/error.hpp"
#include "flowguard/json_codec.hpp"
#include "flowguard/numfmt.hpp"

namespace flowguard {
namespace {

std::string_view trim(std::string_view s)
{
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && ws(s.back()))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::string shortest(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

[[noreturn]] void fail(ErrorCode code, std::size_t line, const std::string& reason)
{
    throw Error(code, "line " + std::to_string(line) + ": " + reason);
}

Json parse_json_line(const std::string& line, std::size_t line_no, ErrorCode code)
{
    try {
        Json j = Json::parse(line);
        if (!j.is_object())
            fail(code, line_no, "expected a JSON object");
        return j;
    } catch (const Json::exception& e) {
        fail(code, line_no, e.what());
    }
}

constexpr std::string_view kAnnotationHeader = "video_id,verb,noun,start_s,end_s";

} // namespace

TrainingCorpus parse_annotations(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<AnnotatedSegment> segments;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (line_no == 1 && text.starts_with("\xEF\xBB\xBF"))
            text.remove_prefix(3);
        if (text.empty())
            continue;
        if (!header_seen) {
            if (text != kAnnotationHeader)
                fail(ErrorCode::MalformedRow, line_no,
                     "expected header '" + std::string(kAnnotationHeader) + "'");
            header_seen = true;
            continue;
        }
        const auto cols = split_commas(text);
        if (cols.size() != 5)
            fail(ErrorCode::MalformedRow, line_no,
                 "expected 5 columns, got " + std::to_string(cols.size()));
        AnnotatedSegment seg;
        seg.video_id = std::string(trim(cols[0]));
        seg.verb = std::string(trim(cols[1]));
        seg.noun = std::string(trim(cols[2]));
        const auto start = parse_decimal(cols[3]);
        const auto end = parse_decimal(cols[4]);
        if (!start)
            fail(ErrorCode::MalformedRow, line_no, "start_s is not a number");
        if (!end)
            fail(ErrorCode::MalformedRow, line_no, "end_s is not a number");
        seg.start_s = *start;
        seg.end_s = *end;
        try {
            seg.validate();
        } catch (const Error& e) {
            fail(ErrorCode::MalformedRow, line_no, e.what());
        }
        segments.push_back(std::move(seg));
    }
    if (!header_seen)
        fail(ErrorCode::MalformedRow, line_no == 0 ? 1 : line_no, "missing header");
    return TrainingCorpus(std::move(segments));
}

std::string write_annotations(const TrainingCorpus& corpus)
{
    std::string out(kAnnotationHeader);
    out += '\n';
    for (const auto& [id, segs] : corpus.videos()) {
        for (const auto& s : segs) {
            out += s.video_id + ',' + s.verb + ',' + s.noun + ',' + shortest(s.start_s) + ','
                + shortest(s.end_s) + '\n';
        }
    }
    return out;
}

std::vector<TopKPrediction> parse_predictions(std::istream& in)
{
    std::vector<TopKPrediction> out;
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::int64_t> last_step;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const Json j = parse_json_line(line, line_no, ErrorCode::MalformedPrediction);
        auto step = j.find("step");
        if (step == j.end() || !step->is_number_integer())
            fail(ErrorCode::MalformedPrediction, line_no, "'step' must be an integer");
        const auto step_no = step->get<std::int64_t>();
        if (last_step && step_no <= *last_step)
            fail(ErrorCode::MalformedPrediction, line_no, "steps must be strictly increasing");
        last_step = step_no;
        auto topk = j.find("topk");
        if (topk == j.end() || !topk->is_array() || topk->empty())
            fail(ErrorCode::MalformedPrediction, line_no, "'topk' must be a non-empty array");
        std::vector<ScoredLabel> entries;
        for (const auto& e : *topk) {
            if (!e.is_object() || !e.contains("label") || !e["label"].is_string()
                || !e.contains("score") || !e["score"].is_number())
                fail(ErrorCode::MalformedPrediction, line_no,
                     "entries need a string 'label' and a numeric 'score'");
            ScoredLabel entry{e["label"].get<std::string>(), e["score"].get<double>()};
            if (!entries.empty() && !(entry.score < entries.back().score))
                fail(ErrorCode::MalformedPrediction, line_no,
                     "scores must be strictly descending");
            entries.push_back(std::move(entry));
        }
        try {
            out.emplace_back(std::move(entries));
        } catch (const Error& e) {
            fail(ErrorCode::MalformedPrediction, line_no, e.what());
        }
    }
    return out;
}

std::string write_predictions(const std::vector<TopKPrediction>& predictions)
{
    std::string out;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        auto topk = Json::array();
        for (const auto& e : predictions[i].entries())
            topk.push_back({{"label", e.label}, {"score", e.score}});
        out += Json{{"step", i}, {"topk", std::move(topk)}}.dump() + '\n';
    }
    return out;
}

ActionDictionary parse_dictionary(std::istream& in, Level level)
{
    std::set<std::string> members;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty())
            continue;
        try {
            validate_token(text);
        } catch (const Error& e) {
            throw Error(e.code(), "dictionary line " + std::to_string(line_no) + ": " + e.what());
        }
        members.emplace(text);
    }
    return ActionDictionary(level, std::move(members));
}

std::string write_dictionary(const ActionDictionary& dictionary)
{
    std::string out;
    for (const auto& m : dictionary.members())
        out += m + '\n';
    return out;
}

Sequence parse_sequence(std::istream& in)
{
    Sequence out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty())
            continue;
        try {
            validate_token(text);
        } catch (const Error& e) {
            throw Error(e.code(), "sequence line " + std::to_string(line_no) + ": " + e.what());
        }
        out.emplace_back(text);
    }
    return out;
}

std::string write_sequence(const Sequence& sequence)
{
    std::string out;
    for (const auto& s : sequence)
        out += s + '\n';
    return out;
}

std::vector<StepRecord> parse_session(std::istream& in)
{
    std::vector<StepRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const Json j = parse_json_line(line, line_no, ErrorCode::MalformedSession);
        StepRecord rec;
        if (!j.contains("label") || !j["label"].is_string())
            fail(ErrorCode::MalformedSession, line_no, "'label' must be a string");
        if (!j.contains("duration_s") || !j["duration_s"].is_number())
            fail(ErrorCode::MalformedSession, line_no, "'duration_s' must be a number");
        if (!j.contains("recommended") || !j["recommended"].is_array())
            fail(ErrorCode::MalformedSession, line_no, "'recommended' must be an array");
        rec.label = j["label"].get<std::string>();
        rec.duration_s = j["duration_s"].get<double>();
        for (const auto& r : j["recommended"]) {
            if (!r.is_string())
                fail(ErrorCode::MalformedSession, line_no, "'recommended' holds labels only");
            rec.recommended.push_back(r.get<std::string>());
        }
        try {
            validate_token(rec.label);
        } catch (const Error& e) {
            fail(ErrorCode::MalformedSession, line_no, e.what());
        }
        if (!(rec.duration_s > 0.0))
            fail(ErrorCode::MalformedSession, line_no, "'duration_s' must be positive");
        out.push_back(std::move(rec));
    }
    return out;
}

std::string write_session(const std::vector<StepRecord>& records)
{
    std::string out;
    for (const auto& r : records) {
        out += Json{{"label", r.label}, {"duration_s", r.duration_s}, {"recommended", r.recommended}}
                   .dump()
            + '\n';
    }
    return out;
}

std::string write_score_report(const AnomalyReport& report)
{
    std::string out;
    for (std::size_t i = 0; i < report.full_trace.size(); ++i) {
        Json j = to_json(report.full_trace[i]);
        j["index"] = i;
        out += j.dump() + '\n';
    }
    return out;
}

std::vector<StepAssessment> parse_score_report(std::istream& in)
{
    std::vector<StepAssessment> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        try {
            out.push_back(step_assessment_from_json(Json::parse(line)));
        } catch (const Json::exception& e) {
            fail(ErrorCode::InvalidArgument, line_no, e.what());
        } catch (const Error& e) {
            fail(ErrorCode::InvalidArgument, line_no, e.what());
        }
    }
    return out;
}

std::string write_twsa_report(const TwsaReport& report, TwsaMode mode)
{
    return to_json(report, mode).dump(2) + '\n';
}

TwsaReport parse_twsa_report(std::istream& in)
{
    try {
        return twsa_report_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("TWSA report: ") + e.what());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << contents;
    if (!out)
        throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

} // namespace flowguard
