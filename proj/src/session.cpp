#include "flowguard/session.hpp"

#include <cmath>
#include <fstream>

#include "flowguard/error.hpp"
#include "flowguard/numfmt.hpp"

namespace flowguard {
namespace {

template <typename T>
T field_or(const Json& j, const char* key, T fallback)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null())
        return fallback;
    try {
        return it->get<T>();
    } catch (const Json::exception&) {
        throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' has the wrong type");
    }
}

Sequence labels_field(const Json& j, const char* key)
{
    Sequence out = field_or<Sequence>(j, key, {});
    for (const auto& l : out)
        validate_token(l);
    return out;
}

PredictorConfig predictor_from_json(const Json& p, std::uint64_t default_seed)
{
    PredictorConfig cfg;
    if (!p.is_object())
        throw Error(ErrorCode::InvalidArgument, "'predictor' must be an object");
    const auto type = field_or<std::string>(p, "type", "markov");
    if (type == "markov")
        cfg.kind = PredictorKind::Markov;
    else if (type == "noisy_oracle")
        cfg.kind = PredictorKind::NoisyOracle;
    else if (type == "replay")
        cfg.kind = PredictorKind::Replay;
    else
        throw Error(ErrorCode::InvalidArgument, "unknown predictor type '" + type + "'");
    cfg.seed = field_or<std::uint64_t>(p, "seed", default_seed);
    cfg.epsilon = field_or<double>(p, "epsilon", 0.0);
    cfg.drop_truth = field_or<bool>(p, "drop_truth", false);
    cfg.ground_truth = labels_field(p, "ground_truth");
    if (auto it = p.find("records"); it != p.end()) {
        if (!it->is_array())
            throw Error(ErrorCode::InvalidArgument, "'records' must be an array");
        for (const auto& rec : *it) {
            std::vector<ScoredLabel> entries;
            const Json& topk = rec.is_object() && rec.contains("topk") ? rec["topk"] : rec;
            if (!topk.is_array())
                throw Error(ErrorCode::InvalidArgument, "replay records must hold a 'topk' array");
            for (const auto& e : topk)
                entries.push_back({e.at("label").get<std::string>(), e.at("score").get<double>()});
            cfg.records.emplace_back(std::move(entries));
        }
    }
    return cfg;
}

std::unique_ptr<PredictionSource> make_source(const PredictorConfig& cfg,
                                              std::shared_ptr<const ReferenceGraph> graph,
                                              const std::string& start)
{
    switch (cfg.kind) {
    case PredictorKind::Replay:
        return std::make_unique<FileReplaySource>(cfg.records);
    case PredictorKind::NoisyOracle:
        return std::make_unique<NoisyOracleSource>(cfg.ground_truth, graph->vocab(), cfg.epsilon,
                                                   cfg.seed, cfg.drop_truth);
    case PredictorKind::Markov:
        break;
    }
    return std::make_unique<MarkovSamplerSource>(std::move(graph), cfg.seed, start);
}

Json optional_json(const std::optional<TopKPrediction>& p)
{
    return p ? to_json(*p) : Json(nullptr);
}

Json optional_json(const std::optional<GuidanceOutcome>& g)
{
    return g ? to_json(*g) : Json(nullptr);
}

} // namespace

SessionRequest SessionRequest::from_json(const Json& body)
{
    if (!body.is_object())
        throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
    SessionRequest req;
    req.graph_id = field_or<std::string>(body, "graph_id", "default");
    req.dictionary_id = field_or<std::string>(body, "dictionary_id", "default");
    if (auto it = body.find("initial_state"); it != body.end() && !it->is_null()) {
        req.initial_state = field_or<std::string>(body, "initial_state", "");
        validate_token(*req.initial_state);
    }
    req.seed = field_or<std::uint64_t>(body, "seed", 0);
    req.predictor.seed = req.seed;
    if (auto it = body.find("predictor"); it != body.end() && !it->is_null())
        req.predictor = predictor_from_json(*it, req.seed);
    req.anomaly.use_certainty = field_or<bool>(body, "use_certainty", true);
    const auto mode = field_or<std::string>(body, "factor2_mode", "corrected");
    if (mode == "literal")
        req.anomaly.factor2_mode = ProbabilityFactorMode::Literal;
    else if (mode != "corrected")
        throw Error(ErrorCode::InvalidArgument, "factor2_mode must be corrected or literal");
    req.anomaly.k = field_or<std::size_t>(body, "k", 5);
    if (req.anomaly.k == 0)
        throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    req.twsa_mode = parse_twsa_mode(field_or<std::string>(body, "twsa_mode", "top5"));
    if (body.contains("expected") && !body["expected"].is_null())
        req.expected = labels_field(body, "expected");
    if (req.twsa_mode == TwsaMode::StrictSequence && !req.expected)
        throw Error(ErrorCode::InvalidArgument, "strict TWSA mode needs an 'expected' sequence");
    return req;
}

Json Observation::to_json() const
{
    return {{"index", index},
            {"state_before", state_before},
            {"label", label},
            {"duration_s", round_sig(duration_s, kReportDigits)},
            {"assessment", flowguard::to_json(assessment)},
            {"prediction", optional_json(prediction)},
            {"guidance", optional_json(guidance)},
            {"step_twsa", round_sig(step_twsa, kReportDigits)},
            {"running_twsa", round_sig(running_twsa, kReportDigits)},
            {"state", state_after},
            {"pending_repeat", pending_repeat}};
}

Session::Session(std::string id, std::string graph_id, std::string dictionary_id,
                 std::shared_ptr<const ReferenceGraph> graph, ActionDictionary dictionary,
                 std::shared_ptr<const ReferenceTimes> reference_times,
                 std::unique_ptr<PredictionSource> source, const SessionRequest& request)
    : id_(std::move(id)), graph_id_(std::move(graph_id)), dictionary_id_(std::move(dictionary_id)),
      graph_(std::move(graph)), dictionary_(std::move(dictionary)),
      reference_times_(std::move(reference_times)), source_(std::move(source)),
      anomaly_(request.anomaly), twsa_mode_(request.twsa_mode), expected_(request.expected)
{
    if (!request.initial_state)
        throw Error(ErrorCode::InvalidArgument, "session needs a resolved initial state");
    initial_state_ = *request.initial_state;
    if (!graph_->has_node(initial_state_))
        throw Error(ErrorCode::UnknownLabel,
                    "initial state '" + initial_state_ + "' is not in the graph vocabulary");
    state_ = initial_state_;
    advance_prediction(state_);
    initial_prediction_ = pending_prediction_;
    if (pending_prediction_)
        initial_guidance_ = guide(*graph_, state_, *pending_prediction_, dictionary_);
    pending_repeat_ = initial_guidance_ && is_repeat(*initial_guidance_);
}

void Session::set_trace_file(std::string path)
{
    std::lock_guard lock(mutex_);
    trace_file_ = std::move(path);
}

void Session::advance_prediction(const std::string& state)
{
    source_->sync(state);
    try {
        pending_prediction_ = source_->next_topk();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SourceExhausted)
            throw;
        pending_prediction_.reset();
    }
}

Observation Session::observe(const std::string& label, double duration_s)
{
    std::lock_guard lock(mutex_);
    if (!graph_->has_node(label))
        throw Error(ErrorCode::UnknownLabel, "label '" + label + "' is not in the graph vocabulary");
    if (!(duration_s > 0.0) || !std::isfinite(duration_s))
        throw Error(ErrorCode::NonPositiveDuration, "observation duration must be positive");
    if (!reference_times_)
        throw Error(ErrorCode::MissingReferenceTime,
                    "graph '" + graph_id_ + "' was loaded without reference times");
    reference_times_->at(label);

    Observation obs;
    obs.index = history_.size();
    obs.state_before = state_;
    obs.label = label;
    obs.duration_s = duration_s;
    obs.assessment = assess_transition(*graph_, state_, label, anomaly_);

    StepRecord record{label, duration_s,
                      pending_prediction_ ? pending_prediction_->labels() : Sequence{}};
    records_.push_back(std::move(record));
    std::optional<Sequence> expected_prefix;
    if (expected_) {
        expected_prefix = *expected_;
        if (expected_prefix->size() > records_.size())
            expected_prefix->resize(records_.size());
    }
    const TwsaReport twsa = evaluate_session(records_, *reference_times_, twsa_mode_, expected_prefix);
    obs.step_twsa = twsa.steps.back().score;
    obs.running_twsa = twsa.overall;
    running_twsa_ = twsa.overall;

    advance_prediction(label);
    obs.prediction = pending_prediction_;
    if (pending_prediction_)
        obs.guidance = guide(*graph_, label, *pending_prediction_, dictionary_);

    pending_repeat_ = obs.guidance && is_repeat(*obs.guidance);
    if (!pending_repeat_)
        state_ = label;
    obs.state_after = state_;
    obs.pending_repeat = pending_repeat_;
    history_.push_back(obs);

    if (!trace_file_.empty()) {
        std::ofstream out(trace_file_, std::ios::app);
        out << obs.to_json().dump() << '\n';
    }
    return obs;
}

Json Session::trace() const
{
    std::lock_guard lock(mutex_);
    auto steps = Json::array();
    for (const auto& o : history_)
        steps.push_back(o.to_json());
    return {{"id", id_},
            {"graph_id", graph_id_},
            {"dictionary_id", dictionary_id_},
            {"level", std::string(to_string(graph_->level()))},
            {"initial_state", initial_state_},
            {"initial_prediction", optional_json(initial_prediction_)},
            {"initial_guidance", optional_json(initial_guidance_)},
            {"state", state_},
            {"pending_repeat", pending_repeat_},
            {"running_twsa", history_.empty() ? Json(nullptr)
                                              : Json(round_sig(running_twsa_, kReportDigits))},
            {"twsa_mode", std::string(to_string(twsa_mode_))},
            {"steps", std::move(steps)}};
}

double Session::running_twsa() const
{
    std::lock_guard lock(mutex_);
    return running_twsa_;
}

std::size_t Session::size() const
{
    std::lock_guard lock(mutex_);
    return history_.size();
}

std::vector<StepRecord> Session::records() const
{
    std::lock_guard lock(mutex_);
    return records_;
}

void SessionManager::add_graph(const std::string& id, std::shared_ptr<const ReferenceGraph> graph,
                               std::shared_ptr<const ReferenceTimes> reference_times)
{
    if (!graph)
        throw Error(ErrorCode::InvalidArgument, "null graph");
    std::unique_lock lock(mutex_);
    graphs_[id] = {std::move(graph), std::move(reference_times)};
}

void SessionManager::add_dictionary(const std::string& id, ActionDictionary dictionary)
{
    std::unique_lock lock(mutex_);
    dictionaries_.insert_or_assign(id, std::move(dictionary));
}

void SessionManager::set_trace_dir(std::string dir)
{
    std::unique_lock lock(mutex_);
    trace_dir_ = std::move(dir);
}

const SessionManager::GraphEntry& SessionManager::find_graph(const std::string& id) const
{
    auto it = graphs_.find(id);
    if (it == graphs_.end())
        throw Error(ErrorCode::UnknownGraph, "unknown graph '" + id + "'");
    return it->second;
}

std::shared_ptr<Session> SessionManager::find_session(const std::string& id) const
{
    std::shared_lock lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw Error(ErrorCode::UnknownSession, "unknown session '" + id + "'");
    return it->second;
}

std::string SessionManager::create_session(const SessionRequest& request)
{
    GraphEntry entry;
    ActionDictionary dictionary;
    std::string trace_dir;
    {
        std::shared_lock lock(mutex_);
        entry = find_graph(request.graph_id);
        if (auto it = dictionaries_.find(request.dictionary_id); it != dictionaries_.end()) {
            dictionary = it->second;
        } else if (request.dictionary_id == "default") {
            dictionary = default_dictionary(*entry.graph);
        } else {
            throw Error(ErrorCode::UnknownDictionary,
                        "unknown dictionary '" + request.dictionary_id + "'");
        }
        trace_dir = trace_dir_;
    }

    const std::string id = "s" + std::to_string(next_id_.fetch_add(1));
    std::string start = request.initial_state.value_or("");
    if (!request.initial_state) {
        const auto starts = entry.graph->states_with_successors();
        SeededRng rng(request.seed);
        start = starts.at(rng.below(starts.size()));
    }
    SessionRequest resolved = request;
    resolved.initial_state = start;
    auto session = std::make_shared<Session>(
        id, request.graph_id, request.dictionary_id, entry.graph, std::move(dictionary),
        entry.reference_times, make_source(request.predictor, entry.graph, start), resolved);
    if (!trace_dir.empty())
        session->set_trace_file(trace_dir + "/" + id + ".jsonl");

    std::unique_lock lock(mutex_);
    sessions_.emplace(id, std::move(session));
    return id;
}

Observation SessionManager::observe(const std::string& session_id, const std::string& label,
                                    double duration_s)
{
    return find_session(session_id)->observe(label, duration_s);
}

Json SessionManager::session_trace(const std::string& session_id) const
{
    return find_session(session_id)->trace();
}

std::vector<StepRecord> SessionManager::session_records(const std::string& session_id) const
{
    return find_session(session_id)->records();
}

std::string SessionManager::graph_document(const std::string& graph_id) const
{
    return serialize_graph(*graph(graph_id));
}

TransitionRow SessionManager::successors(const std::string& graph_id,
                                         const std::string& state) const
{
    return transition_row(*graph(graph_id), state);
}

std::shared_ptr<const ReferenceGraph> SessionManager::graph(const std::string& graph_id) const
{
    std::shared_lock lock(mutex_);
    return find_graph(graph_id).graph;
}

} // namespace flowguard
