#include "flowguard/reference_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "flowguard/error.hpp"
#include "flowguard/numfmt.hpp"
#include "json.hpp"

namespace flowguard {

std::optional<std::size_t> TransitionRow::position(std::string_view label) const
{
    for (std::size_t i = 0; i < successors.size(); ++i) {
        if (successors[i].label == label)
            return i;
    }
    return std::nullopt;
}

ReferenceGraph ReferenceGraph::from_counts(Level level, std::vector<std::string> vocab,
                                           const std::map<EdgeKey, std::uint64_t>& counts)
{
    ReferenceGraph g;
    g.level_ = level;
    std::set<std::string> nodes(vocab.begin(), vocab.end());
    for (const auto& [key, n] : counts) {
        if (n == 0)
            throw Error(ErrorCode::InvalidArgument,
                        "edge " + key.first + " -> " + key.second + " has zero count");
        nodes.insert(key.first);
        nodes.insert(key.second);
        g.total_ += n;
    }
    if (g.total_ == 0)
        throw Error(ErrorCode::EmptyGraph, "no transitions to build a reference graph from");
    for (const auto& n : nodes)
        validate_token(n);
    g.vocab_.assign(nodes.begin(), nodes.end());
    g.counts_ = counts;

    std::map<std::string, std::uint64_t> row_totals;
    for (const auto& [key, n] : counts)
        row_totals[key.first] += n;
    for (const auto& [key, n] : counts) {
        auto& row = g.rows_[key.first];
        row.state = key.first;
        const double p = static_cast<double>(n) / static_cast<double>(row_totals[key.first]);
        row.successors.push_back({key.second, n, p});
    }
    for (auto& [state, row] : g.rows_) {
        // Compare integer counts so ties are exact.
        std::sort(row.successors.begin(), row.successors.end(),
                  [](const Successor& a, const Successor& b) {
                      if (a.count != b.count)
                          return a.count > b.count;
                      return a.label < b.label;
                  });
    }
    return g;
}

bool ReferenceGraph::has_node(std::string_view label) const
{
    return std::binary_search(vocab_.begin(), vocab_.end(), label);
}

std::uint64_t ReferenceGraph::count(const std::string& src, const std::string& dst) const
{
    auto it = counts_.find({src, dst});
    return it == counts_.end() ? 0 : it->second;
}

double ReferenceGraph::weight(const std::string& src, const std::string& dst) const
{
    if (total_ == 0)
        return 0.0;
    return static_cast<double>(count(src, dst)) / static_cast<double>(total_);
}

std::vector<GraphEdge> ReferenceGraph::edges() const
{
    std::vector<GraphEdge> out;
    out.reserve(counts_.size());
    for (const auto& [key, n] : counts_)
        out.push_back({key.first, key.second, n,
                       static_cast<double>(n) / static_cast<double>(total_)});
    return out;
}

const TransitionRow& ReferenceGraph::row(const std::string& state) const
{
    static const TransitionRow kEmpty{};
    auto it = rows_.find(state);
    return it == rows_.end() ? kEmpty : it->second;
}

std::vector<std::string> ReferenceGraph::states_with_successors() const
{
    std::vector<std::string> out;
    out.reserve(rows_.size());
    for (const auto& [state, row] : rows_)
        out.push_back(state);
    return out;
}

ReferenceGraph build_reference_graph(const std::vector<Sequence>& sequences, Level level)
{
    std::set<std::string> vocab;
    std::map<ReferenceGraph::EdgeKey, std::uint64_t> counts;
    for (const auto& seq : sequences) {
        vocab.insert(seq.begin(), seq.end());
        for (std::size_t k = 0; k + 1 < seq.size(); ++k)
            ++counts[{seq[k], seq[k + 1]}];
    }
    if (counts.empty())
        throw Error(ErrorCode::EmptyGraph, "no sequence contributes a transition");
    return ReferenceGraph::from_counts(level, {vocab.begin(), vocab.end()}, counts);
}

TransitionRow transition_row(const ReferenceGraph& graph, const std::string& state)
{
    TransitionRow row = graph.row(state);
    row.state = state;
    return row;
}

double entropy_term(double p)
{
    if (p <= 0.0 || p >= 1.0)
        return 0.0;
    return -p * std::log(p);
}

double row_entropy(const TransitionRow& row)
{
    double h = 0.0;
    for (const auto& s : row.successors)
        h += entropy_term(s.probability);
    return h;
}

ReferenceGraph scale_counts(const ReferenceGraph& graph, std::uint64_t factor)
{
    if (factor == 0)
        throw Error(ErrorCode::InvalidArgument, "count scale factor must be positive");
    auto counts = graph.counts();
    for (auto& [key, n] : counts)
        n *= factor;
    return ReferenceGraph::from_counts(graph.level(), graph.vocab(), counts);
}

std::string serialize_graph(const ReferenceGraph& graph)
{
    nlohmann::json doc;
    doc["level"] = std::string(to_string(graph.level()));
    doc["vocab"] = graph.vocab();
    doc["total_transitions"] = graph.total_transitions();
    auto edges = nlohmann::json::array();
    for (const auto& e : graph.edges()) {
        edges.push_back({{"src", e.src},
                         {"dst", e.dst},
                         {"count", e.count},
                         {"weight", round_sig(e.weight, kGraphDigits)}});
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& what)
{
    throw Error(ErrorCode::MalformedGraphFile, "malformed graph file at " + where + ": " + what);
}

const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
        malformed(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string string_at(const nlohmann::json& v, const std::string& path)
{
    if (!v.is_string())
        malformed(path, "expected a string");
    return v.get<std::string>();
}

std::uint64_t uint_at(const nlohmann::json& v, const std::string& path)
{
    if (!v.is_number_unsigned())
        malformed(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace

ReferenceGraph deserialize_graph(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        malformed("byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_object())
        malformed("$", "expected an object");

    Level level = Level::Action;
    try {
        level = parse_level(string_at(field(doc, "level", "$"), "$.level"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedGraphFile)
            throw;
        malformed("$.level", e.what());
    }

    const auto& vocab_json = field(doc, "vocab", "$");
    if (!vocab_json.is_array())
        malformed("$.vocab", "expected an array");
    std::vector<std::string> vocab;
    for (std::size_t i = 0; i < vocab_json.size(); ++i)
        vocab.push_back(string_at(vocab_json[i], "$.vocab[" + std::to_string(i) + "]"));
    std::set<std::string> vocab_set(vocab.begin(), vocab.end());
    if (vocab_set.size() != vocab.size())
        malformed("$.vocab", "duplicate labels");

    const std::uint64_t total = uint_at(field(doc, "total_transitions", "$"), "$.total_transitions");

    const auto& edges_json = field(doc, "edges", "$");
    if (!edges_json.is_array())
        malformed("$.edges", "expected an array");
    std::map<ReferenceGraph::EdgeKey, std::uint64_t> counts;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const std::string path = "$.edges[" + std::to_string(i) + "]";
        const auto& e = edges_json[i];
        if (!e.is_object())
            malformed(path, "expected an object");
        auto src = string_at(field(e, "src", path), path + ".src");
        auto dst = string_at(field(e, "dst", path), path + ".dst");
        auto n = uint_at(field(e, "count", path), path + ".count");
        const auto& w = field(e, "weight", path);
        if (!w.is_number())
            malformed(path + ".weight", "expected a number");
        if (n == 0)
            malformed(path + ".count", "edge count must be positive");
        if (!vocab_set.contains(src) || !vocab_set.contains(dst))
            malformed(path, "edge endpoint not in vocab");
        if (!counts.emplace(ReferenceGraph::EdgeKey{src, dst}, n).second)
            malformed(path, "duplicate edge");
        sum += n;
        if (total > 0
            && std::abs(w.get<double>() - static_cast<double>(n) / static_cast<double>(total)) > 1e-9)
            malformed(path + ".weight", "weight does not equal count / total_transitions");
    }
    if (counts.empty())
        malformed("$.edges", "graph has no edges");
    if (sum != total)
        malformed("$.total_transitions", "does not equal the sum of edge counts");

    try {
        return ReferenceGraph::from_counts(level, std::move(vocab), counts);
    } catch (const Error& e) {
        malformed("$", e.what());
    }
}

} // namespace flowguard
