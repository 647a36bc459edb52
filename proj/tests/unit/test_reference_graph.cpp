#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "flowguard/error.hpp"
#include "flowguard/formats.hpp"
#include "flowguard/reference_graph.hpp"
#include "oracle.hpp"

using namespace flowguard;

namespace {

ReferenceGraph graph_from(const oracle::RandomGraph& g)
{
    return ReferenceGraph::from_counts(Level::Action, g.labels, g.counts);
}

} // namespace

TEST_CASE("single transition graph")
{
    const auto g = build_reference_graph({{"A", "B"}});
    CHECK(g.total_transitions() == 1);
    CHECK(g.count("A", "B") == 1);
    CHECK(g.weight("A", "B") == 1.0);
    CHECK(g.edges().size() == 1);
}

TEST_CASE("fixture graph counts match a hand-rolled pair count")
{
    const auto expected = oracle::count_pairs({fixtures::kFixtureSequence});
    const auto g = fixtures::fixture_graph();
    CHECK(g.counts() == expected);
    CHECK(g.total_transitions() == 8);
    CHECK(g.count("A", "B") == 3);
    CHECK(g.count("B", "C") == 2);
    CHECK(g.count("C", "A") == 1);
    CHECK(g.count("B", "D") == 1);
    CHECK(g.count("D", "A") == 1);
    CHECK(g.weight("A", "B") == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(g.weight("B", "C") == doctest::Approx(0.25));
    double sum = 0;
    for (const auto& e : g.edges()) {
        CHECK(std::abs(e.weight - static_cast<double>(e.count) / 8.0) <= 1e-12);
        sum += e.weight;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    CHECK(g.vocab() == std::vector<std::string>{"A", "B", "C", "D"});
}

TEST_CASE("graphs without transitions are rejected")
{
    CHECK_THROWS_AS(build_reference_graph({{"A"}, {"B"}}), Error);
    try {
        build_reference_graph({{"A"}, {"B"}});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyGraph);
    }
}

TEST_CASE("sequences do not bridge across videos")
{
    const auto g = build_reference_graph({{"A", "B"}, {"C", "D"}});
    CHECK(g.count("B", "C") == 0);
    CHECK(g.total_transitions() == 2);
}

TEST_CASE("transition rows are row-normalised and sorted")
{
    const auto g = fixtures::fixture_graph();
    const auto b = transition_row(g, "B");
    REQUIRE(b.size() == 2);
    CHECK(b.successors[0].label == "C");
    CHECK(b.successors[0].count == 2);
    CHECK(b.successors[0].probability == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(b.successors[1].label == "D");
    CHECK(b.successors[1].probability == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto d = transition_row(g, "D");
    REQUIRE(d.size() == 1);
    CHECK(d.successors[0].label == "A");
    CHECK(d.successors[0].probability == 1.0);

    CHECK(transition_row(g, "Z").empty());
    CHECK(transition_row(g, "Z").state == "Z");
}

TEST_CASE("row ties break lexicographically")
{
    const auto g = build_reference_graph({{"S", "b"}, {"S", "a"}, {"S", "c"}, {"S", "c"}});
    const auto row = g.row("S");
    REQUIRE(row.size() == 3);
    CHECK(row.successors[0].label == "c");
    CHECK(row.successors[1].label == "a");
    CHECK(row.successors[2].label == "b");
}

TEST_CASE("row entropy")
{
    const auto g = fixtures::fixture_graph();
    CHECK(row_entropy(g.row("D")) == 0.0);
    // Oracle: -(2/3 ln 2/3 + 1/3 ln 1/3) evaluated directly.
    const double h = -(2.0 / 3.0 * std::log(2.0 / 3.0) + 1.0 / 3.0 * std::log(1.0 / 3.0));
    CHECK(std::abs(row_entropy(g.row("B")) - h) <= 1e-12);
    CHECK(std::abs(row_entropy(g.row("B")) - 0.636514) <= 1e-6);
    const auto uniform = build_reference_graph({{"S", "a"}, {"S", "b"}, {"S", "c"}, {"S", "d"}});
    CHECK(std::abs(row_entropy(uniform.row("S")) - 1.386294) <= 1e-6);
    CHECK(row_entropy(TransitionRow{}) == 0.0);
}

TEST_CASE("row properties on random graphs")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto rg = oracle::random_graph(rng);
        const auto g = graph_from(rg);
        const auto scaled = scale_counts(g, 1 + trial % 7);
        for (const auto& state : g.vocab()) {
            const auto& row = g.row(state);
            if (row.empty())
                continue;
            double sum = 0;
            for (const auto& s : row.successors)
                sum += s.probability;
            CHECK(std::abs(sum - 1.0) <= 1e-9);
            const double h = row_entropy(row);
            CHECK(h >= 0.0);
            CHECK(h <= std::log(static_cast<double>(row.size())) + 1e-12);
            bool uniform = true;
            for (const auto& s : row.successors)
                uniform = uniform && s.count == row.successors.front().count;
            if (!uniform && row.size() > 1)
                CHECK(h < std::log(static_cast<double>(row.size())) - 1e-12);

            const auto& srow = scaled.row(state);
            REQUIRE(srow.size() == row.size());
            for (std::size_t i = 0; i < row.size(); ++i) {
                CHECK(srow.successors[i].label == row.successors[i].label);
                CHECK(srow.successors[i].probability == row.successors[i].probability);
            }
            CHECK(row_entropy(srow) == h);
        }
    }
}

TEST_CASE("serialization round-trips and is canonical")
{
    const auto g = fixtures::fixture_graph();
    const auto text = serialize_graph(g);
    CHECK(deserialize_graph(text) == g);
    CHECK(serialize_graph(deserialize_graph(text)) == text);
    CHECK(serialize_graph(fixtures::fixture_graph()) == text);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto rg = graph_from(oracle::random_graph(rng));
        CHECK(deserialize_graph(serialize_graph(rg)) == rg);
    }
}

TEST_CASE("truncated or inconsistent graph files are rejected with a position")
{
    const auto text = serialize_graph(fixtures::fixture_graph());
    auto code_and_msg = [](const std::string& t) {
        try {
            deserialize_graph(t);
        } catch (const Error& e) {
            return std::make_pair(e.code(), std::string(e.what()));
        }
        return std::make_pair(ErrorCode::Io, std::string());
    };
    auto [code, msg] = code_and_msg(text.substr(0, text.size() / 2));
    CHECK(code == ErrorCode::MalformedGraphFile);
    CHECK(msg.find("byte") != std::string::npos);

    auto bad_total = text;
    bad_total.replace(bad_total.find("\"total_transitions\": 8"), 22, "\"total_transitions\": 9");
    auto [c2, m2] = code_and_msg(bad_total);
    CHECK(c2 == ErrorCode::MalformedGraphFile);
    CHECK(m2.find("total_transitions") != std::string::npos);

    auto [c3, m3] = code_and_msg(R"({"level":"verb","vocab":["A"],"total_transitions":1,
        "edges":[{"src":"A","dst":"B","count":1,"weight":1.0}]})");
    CHECK(c3 == ErrorCode::MalformedGraphFile);
    CHECK(m3.find("edges[0]") != std::string::npos);
}

TEST_CASE("hand-written minimal graph file")
{
    const auto g = deserialize_graph(read_file(fixtures::source_path("tests/data/minimal_graph.json")));
    CHECK(g.total_transitions() == 1);
    CHECK(g.level() == Level::Verb);
    CHECK(g.count("take", "put") == 1);
    CHECK(g.weight("take", "put") == 1.0);
    CHECK(g.row("take").successors.front().label == "put");
}

TEST_CASE("rebuilding yields byte-identical serializations")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> label(0, 6);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Sequence> seqs(3);
        for (auto& s : seqs)
            for (int i = 0; i < 12; ++i)
                s.push_back("L" + std::to_string(label(rng)));
        CHECK(serialize_graph(build_reference_graph(seqs)) == serialize_graph(build_reference_graph(seqs)));
    }
}
