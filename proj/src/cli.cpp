#include "flowguard/cli.hpp"

#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "flowguard/anomaly.hpp"
#include "flowguard/error.hpp"
#include "flowguard/formats.hpp"
#include "flowguard/guidance.hpp"
#include "flowguard/http_service.hpp"
#include "flowguard/json_codec.hpp"
#include "flowguard/predictor.hpp"
#include "flowguard/reference_graph.hpp"
#include "flowguard/session.hpp"
#include "flowguard/twsa.hpp"

namespace flowguard {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ReferenceGraph load_graph(const std::string& path)
{
    return deserialize_graph(read_file(path));
}

TrainingCorpus load_annotations(const std::string& path)
{
    std::istringstream in(read_file(path));
    return parse_annotations(in);
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

struct BuildGraphArgs {
    std::string annotations, level = "action", out;
};

struct ScoreArgs {
    std::string graph, sequence, out;
    bool no_certainty = false;
    bool literal_factor2 = false;
    std::size_t k = 5;
};

struct GuideArgs {
    std::string graph, predictions, dictionary, state, out;
};

struct TwsaArgs {
    std::string graph, annotations, session, mode = "top5", expected, out;
};

struct SimulateArgs {
    std::string graph, out;
    std::size_t steps = 0;
    std::uint64_t seed = 0;
};

struct ServeArgs {
    std::string graph, host = "127.0.0.1", annotations, dictionary, static_dir, trace_dir;
    int port = 0;
};

int run_build_graph(const BuildGraphArgs& a, std::ostream& out)
{
    const Level level = parse_level(a.level);
    const auto corpus = load_annotations(a.annotations);
    const auto graph = build_reference_graph(derive_sequences(corpus, level), level);
    emit(a.out, serialize_graph(graph), out);
    return kExitOk;
}

int run_score(const ScoreArgs& a, std::ostream& out)
{
    const auto graph = load_graph(a.graph);
    std::istringstream in(read_file(a.sequence));
    const auto sequence = parse_sequence(in);
    AnomalyConfig cfg;
    cfg.use_certainty = !a.no_certainty;
    cfg.factor2_mode = a.literal_factor2 ? ProbabilityFactorMode::Literal
                                         : ProbabilityFactorMode::Corrected;
    cfg.k = a.k;
    emit(a.out, write_score_report(assess_sequence(graph, sequence, cfg)), out);
    return kExitOk;
}

int run_guide(const GuideArgs& a, std::ostream& out)
{
    const auto graph = load_graph(a.graph);
    std::istringstream pin(read_file(a.predictions));
    const auto predictions = parse_predictions(pin);
    ActionDictionary dictionary = default_dictionary(graph);
    if (!a.dictionary.empty()) {
        std::istringstream din(read_file(a.dictionary));
        dictionary = parse_dictionary(din, graph.level());
        dictionary.require_subset_of(graph.vocab());
    }
    if (!graph.has_node(a.state))
        throw Error(ErrorCode::UnknownLabel, "state '" + a.state + "' is not in the graph vocabulary");

    std::string text;
    std::string state = a.state;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const auto outcome = guide(graph, state, predictions[i], dictionary);
        text += Json{{"step", i}, {"state", state}, {"guidance", to_json(outcome)}}.dump() + '\n';
        if (const auto* rec = std::get_if<Recommendation>(&outcome))
            state = rec->label;
    }
    emit(a.out, text, out);
    return kExitOk;
}

int run_twsa(const TwsaArgs& a, std::ostream& out)
{
    const TwsaMode mode = parse_twsa_mode(a.mode);
    if (mode == TwsaMode::StrictSequence && a.expected.empty())
        throw UsageError("--mode strict requires --expected");
    const auto graph = load_graph(a.graph);
    const auto times = compute_reference_times(load_annotations(a.annotations), graph.level());
    std::istringstream sin(read_file(a.session));
    const auto records = parse_session(sin);
    std::optional<Sequence> expected;
    if (!a.expected.empty()) {
        std::istringstream ein(read_file(a.expected));
        expected = parse_sequence(ein);
    }
    emit(a.out, write_twsa_report(evaluate_session(records, times, mode, expected), mode), out);
    return kExitOk;
}

int run_simulate(const SimulateArgs& a, std::ostream& out)
{
    const auto graph = load_graph(a.graph);
    emit(a.out, write_sequence(sample_episode(graph, a.steps, a.seed)), out);
    return kExitOk;
}

int run_serve(const ServeArgs& a, std::ostream& out)
{
    auto graph = std::make_shared<const ReferenceGraph>(load_graph(a.graph));
    std::shared_ptr<const ReferenceTimes> times;
    if (!a.annotations.empty())
        times = std::make_shared<const ReferenceTimes>(
            compute_reference_times(load_annotations(a.annotations), graph->level()));

    SessionManager manager;
    const std::string stem = std::filesystem::path(a.graph).stem().string();
    manager.add_graph("default", graph, times);
    if (stem != "default")
        manager.add_graph(stem, graph, times);
    if (!a.dictionary.empty()) {
        std::istringstream din(read_file(a.dictionary));
        auto dictionary = parse_dictionary(din, graph->level());
        dictionary.require_subset_of(graph->vocab());
        manager.add_dictionary(std::filesystem::path(a.dictionary).stem().string(), dictionary);
    }
    if (!a.trace_dir.empty()) {
        std::filesystem::create_directories(a.trace_dir);
        manager.set_trace_dir(a.trace_dir);
    }
    if (!a.static_dir.empty() && !std::filesystem::is_directory(a.static_dir))
        throw UsageError("--static '" + a.static_dir + "' is not a directory");

    HttpService service(manager, a.static_dir);
    out << "listening on http://" << a.host << ':' << a.port << std::endl;
    if (!service.listen(a.host, a.port))
        throw Error(ErrorCode::Io, "cannot listen on " + a.host + ':' + std::to_string(a.port));
    return kExitOk;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Workflow guidance and anomaly scoring over Markov reference graphs",
                 "flowguard"};
    app.require_subcommand(1);

    BuildGraphArgs build;
    auto* build_cmd = app.add_subcommand("build-graph", "Build a reference graph from annotations");
    build_cmd->add_option("--annotations", build.annotations, "Annotation CSV")->required();
    build_cmd->add_option("--level", build.level, "Label level: action, verb or noun")
        ->check(CLI::IsMember({"action", "verb", "noun"}));
    build_cmd->add_option("--out", build.out, "Output graph file")->required();

    ScoreArgs score;
    auto* score_cmd = app.add_subcommand("score", "Score the transitions of a label sequence");
    score_cmd->add_option("--graph", score.graph, "Reference graph file")->required();
    score_cmd->add_option("--sequence", score.sequence, "Sequence file, one label per line")
        ->required();
    score_cmd->add_flag("--no-certainty", score.no_certainty, "Disable the certainty factor");
    score_cmd->add_flag("--literal-factor2", score.literal_factor2,
                        "Use 1 + p/max_p as the probability factor");
    score_cmd->add_option("--k", score.k, "Number of suggested next actions")
        ->check(CLI::PositiveNumber);
    score_cmd->add_option("--out", score.out, "Output score report")->required();

    GuideArgs guide_args;
    auto* guide_cmd = app.add_subcommand("guide", "Recommend next actions from model predictions");
    guide_cmd->add_option("--graph", guide_args.graph, "Reference graph file")->required();
    guide_cmd->add_option("--predictions", guide_args.predictions, "Prediction file")->required();
    guide_cmd->add_option("--dictionary", guide_args.dictionary,
                          "Dictionary file (default: full graph vocabulary)");
    guide_cmd->add_option("--state", guide_args.state, "Initial state")->required();
    guide_cmd->add_option("--out", guide_args.out, "Output file (default: stdout)");

    TwsaArgs twsa;
    auto* twsa_cmd = app.add_subcommand("twsa", "Time-weighted sequence accuracy of a session");
    twsa_cmd->add_option("--graph", twsa.graph, "Reference graph file (sets the label level)")
        ->required();
    twsa_cmd->add_option("--annotations", twsa.annotations,
                         "Training annotations for reference times")
        ->required();
    twsa_cmd->add_option("--session", twsa.session, "Session file")->required();
    twsa_cmd->add_option("--mode", twsa.mode, "Correctness rule: top5 or strict")
        ->check(CLI::IsMember({"top5", "strict"}));
    twsa_cmd->add_option("--expected", twsa.expected, "Expected sequence file (strict mode)");
    twsa_cmd->add_option("--out", twsa.out, "Output report (default: stdout)");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Sample a label sequence from a graph");
    sim_cmd->add_option("--graph", sim.graph, "Reference graph file")->required();
    sim_cmd->add_option("--steps", sim.steps, "Sequence length (>= 2)")
        ->required()
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    sim_cmd->add_option("--seed", sim.seed, "Random seed");
    sim_cmd->add_option("--out", sim.out, "Output sequence file (default: stdout)");

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the session HTTP service");
    serve_cmd->add_option("--graph", serve.graph, "Reference graph file")->required();
    serve_cmd->add_option("--port", serve.port, "TCP port")->required()->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--host", serve.host, "Bind address");
    serve_cmd->add_option("--annotations", serve.annotations,
                          "Training annotations; needed for TWSA during sessions");
    serve_cmd->add_option("--dictionary", serve.dictionary,
                          "Extra dictionary file, registered under its file stem");
    serve_cmd->add_option("--static", serve.static_dir, "Directory served under /");
    serve_cmd->add_option("--trace-dir", serve.trace_dir, "Append session traces here");

    std::vector<const char*> argv{"flowguard"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*build_cmd)
            return run_build_graph(build, out);
        if (*score_cmd)
            return run_score(score, out);
        if (*guide_cmd)
            return run_guide(guide_args, out);
        if (*twsa_cmd)
            return run_twsa(twsa, out);
        if (*sim_cmd)
            return run_simulate(sim, out);
        if (*serve_cmd)
            return run_serve(serve, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

} // namespace flowguard
