#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "flowguard/anomaly.hpp"
#include "flowguard/dictionary.hpp"
#include "flowguard/guidance.hpp"
#include "flowguard/json_codec.hpp"
#include "flowguard/predictor.hpp"
#include "flowguard/reference_graph.hpp"
#include "flowguard/twsa.hpp"

namespace flowguard {

enum class PredictorKind { Markov, NoisyOracle, Replay };

struct PredictorConfig {
    PredictorKind kind = PredictorKind::Markov;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    bool drop_truth = false;
    Sequence ground_truth;               // NoisyOracle
    std::vector<TopKPrediction> records; // Replay
};

struct SessionRequest {
    std::string graph_id = "default";
    std::string dictionary_id = "default";
    std::optional<std::string> initial_state; // sampled from `seed` when absent
    std::uint64_t seed = 0;
    PredictorConfig predictor;
    AnomalyConfig anomaly;
    TwsaMode twsa_mode = TwsaMode::Top5Membership;
    std::optional<Sequence> expected; // StrictSequence mode

    // Throws InvalidArgument on a malformed body.
    static SessionRequest from_json(const Json& body);
};

struct Observation {
    std::size_t index = 0;
    std::string state_before;
    std::string label;
    double duration_s = 0.0;
    StepAssessment assessment;
    std::optional<TopKPrediction> prediction; // absent once the source is exhausted
    std::optional<GuidanceOutcome> guidance;
    double step_twsa = 0.0;
    double running_twsa = 0.0;
    std::string state_after;
    bool pending_repeat = false;

    Json to_json() const;
};

// One live guidance session. Observations are appended in arrival order;
// a Repeat outcome keeps the Markov state where it was so the next
// observation is assessed from the same state again.
class Session {
public:
    Session(std::string id, std::string graph_id, std::string dictionary_id,
            std::shared_ptr<const ReferenceGraph> graph, ActionDictionary dictionary,
            std::shared_ptr<const ReferenceTimes> reference_times,
            std::unique_ptr<PredictionSource> source, const SessionRequest& request);

    const std::string& id() const noexcept { return id_; }
    // Appends each observation as a JSON line to `path`.
    void set_trace_file(std::string path);

    // Throws UnknownLabel, NonPositiveDuration, MissingReferenceTime before
    // touching any state.
    Observation observe(const std::string& label, double duration_s);

    Json trace() const;
    double running_twsa() const;
    std::size_t size() const;
    std::vector<StepRecord> records() const;

private:
    void advance_prediction(const std::string& state);

    mutable std::mutex mutex_;
    std::string id_;
    std::string graph_id_;
    std::string dictionary_id_;
    std::shared_ptr<const ReferenceGraph> graph_;
    ActionDictionary dictionary_;
    std::shared_ptr<const ReferenceTimes> reference_times_;
    std::unique_ptr<PredictionSource> source_;
    AnomalyConfig anomaly_;
    TwsaMode twsa_mode_;
    std::optional<Sequence> expected_;

    std::string initial_state_;
    std::string state_;
    std::optional<TopKPrediction> initial_prediction_;
    std::optional<GuidanceOutcome> initial_guidance_;
    std::optional<TopKPrediction> pending_prediction_;
    bool pending_repeat_ = false;
    std::vector<StepRecord> records_;
    std::vector<Observation> history_;
    double running_twsa_ = 0.0;
    std::string trace_file_;
};

// Registry of graphs, dictionaries and sessions. Graphs and dictionaries are
// immutable once registered; sessions serialise their own operations.
class SessionManager {
public:
    void add_graph(const std::string& id, std::shared_ptr<const ReferenceGraph> graph,
                   std::shared_ptr<const ReferenceTimes> reference_times = nullptr);
    void add_dictionary(const std::string& id, ActionDictionary dictionary);

    // Writes every observation of every session as a JSON line to
    // `<dir>/<session id>.jsonl`.
    void set_trace_dir(std::string dir);

    // "default" resolves to the full vocabulary of the requested graph.
    // Throws UnknownGraph, UnknownDictionary, UnknownState, SourceExhausted.
    std::string create_session(const SessionRequest& request);
    Observation observe(const std::string& session_id, const std::string& label,
                        double duration_s);
    Json session_trace(const std::string& session_id) const;
    std::vector<StepRecord> session_records(const std::string& session_id) const;

    std::string graph_document(const std::string& graph_id) const;
    TransitionRow successors(const std::string& graph_id, const std::string& state) const;
    std::shared_ptr<const ReferenceGraph> graph(const std::string& graph_id) const;

private:
    struct GraphEntry {
        std::shared_ptr<const ReferenceGraph> graph;
        std::shared_ptr<const ReferenceTimes> reference_times;
    };

    std::shared_ptr<Session> find_session(const std::string& id) const;
    const GraphEntry& find_graph(const std::string& id) const;

    mutable std::shared_mutex mutex_;
    std::map<std::string, GraphEntry> graphs_;
    std::map<std::string, ActionDictionary> dictionaries_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::atomic<std::uint64_t> next_id_{1};
    std::string trace_dir_;
};

} // namespace flowguard
