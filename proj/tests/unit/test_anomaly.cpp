#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "flowguard/anomaly.hpp"
#include "flowguard/error.hpp"
#include "oracle.hpp"

using namespace flowguard;

TEST_CASE("observed certainty")
{
    // Oracle: 1 - (-p ln p) / H with p = 1/3 and the fixture row entropy.
    const double h = -(2.0 / 3.0 * std::log(2.0 / 3.0) + 1.0 / 3.0 * std::log(1.0 / 3.0));
    const double expected = 1.0 - (-(1.0 / 3.0) * std::log(1.0 / 3.0)) / h;
    CHECK(std::abs(observed_certainty(1.0 / 3.0, h) - expected) <= 1e-12);
    CHECK(std::abs(observed_certainty(1.0 / 3.0, 0.636514) - 0.424672) <= 1e-5);
    CHECK(observed_certainty(1.0, 0.0) == 1.0);
    CHECK(observed_certainty(0.0, 0.7) == 1.0);
}

TEST_CASE("fixture transition B -> D")
{
    const auto g = fixtures::fixture_graph();
    const auto step = assess_transition(g, "B", "D");
    REQUIRE(step.rank.has_value());
    CHECK(*step.rank == 2);
    CHECK(step.probability == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(step.entropy - 0.636514) <= 1e-6);
    CHECK(std::abs(step.certainty - 0.424672) <= 1e-5);
    CHECK(std::abs(step.score - 0.212336) <= 1e-5);
    const double oracle_score = oracle::anomaly(g.counts(), "B", "D", true, false);
    CHECK(std::abs(step.score - oracle_score) <= 1e-12);
    REQUIRE(step.suggestions.size() == 2);
    CHECK(step.suggestions[0].label == "C");
}

TEST_CASE("rank-1 transitions score zero, off-graph ones score one")
{
    const auto g = fixtures::fixture_graph();
    CHECK(assess_transition(g, "B", "C").score == 0.0);
    CHECK(*assess_transition(g, "B", "C").rank == 1);

    const auto off = assess_transition(g, "B", "Q");
    CHECK(off.score == 1.0);
    CHECK_FALSE(off.rank.has_value());
    CHECK(off.probability == 0.0);
    CHECK(off.certainty == 1.0);
    CHECK_FALSE(off.unknown_state);
    CHECK(off.suggestions.size() == 2);

    const auto unknown = assess_transition(g, "Z", "A");
    CHECK(unknown.score == 1.0);
    CHECK(unknown.unknown_state);
    CHECK(unknown.suggestions.empty());

    // Single-successor row: the only successor scores 0, anything else 1.
    CHECK(assess_transition(g, "D", "A").score == 0.0);
    CHECK(assess_transition(g, "D", "B").score == 1.0);
}

TEST_CASE("literal probability factor")
{
    const auto g = fixtures::fixture_graph();
    AnomalyConfig cfg;
    cfg.factor2_mode = ProbabilityFactorMode::Literal;
    // 1 * (1 + 0.5) * c
    const auto step = assess_transition(g, "B", "D", cfg);
    CHECK(step.score == doctest::Approx(1.5 * step.certainty).epsilon(1e-14));
    CHECK(step.score > 0.5);
}

TEST_CASE("certainty can be disabled")
{
    const auto g = fixtures::fixture_graph();
    AnomalyConfig cfg;
    cfg.use_certainty = false;
    const auto step = assess_transition(g, "B", "D", cfg);
    CHECK(step.certainty == 1.0);
    CHECK(step.score == doctest::Approx(0.5));
}

TEST_CASE("assess_sequence keeps only positive scores")
{
    const auto g = fixtures::fixture_graph();
    const Sequence seq{"A", "B", "C", "A", "B", "C"};
    const auto report = assess_sequence(g, seq);
    REQUIRE(report.full_trace.size() == 5);
    for (std::size_t i = 0; i < report.full_trace.size(); ++i) {
        const auto replay = assess_transition(g, seq[i], seq[i + 1]);
        CHECK(report.full_trace[i] == replay);
    }
    // Every step follows the most probable successor.
    CHECK(report.assessments.empty());

    const auto mixed = assess_sequence(g, {"A", "B", "D", "A", "C", "Z", "A"});
    REQUIRE(mixed.full_trace.size() == 6);
    std::vector<double> kept;
    for (const auto& s : mixed.assessments) {
        CHECK(s.score > 0.0);
        kept.push_back(s.score);
    }
    std::vector<double> expected;
    for (const auto& s : mixed.full_trace)
        if (s.score > 0.0)
            expected.push_back(s.score);
    CHECK(kept == expected);
    CHECK(mixed.full_trace[4].score == 1.0); // C -> Z off-graph
    CHECK_FALSE(mixed.full_trace[4].unknown_state);
    CHECK(mixed.full_trace[5].unknown_state); // Z unknown
    CHECK(mixed.full_trace[5].score == 1.0);
}

TEST_CASE("short sequences are rejected")
{
    const auto g = fixtures::fixture_graph();
    try {
        assess_sequence(g, {"A"});
        FAIL("expected SequenceTooShort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SequenceTooShort);
    }
}

TEST_CASE("topk_next")
{
    const auto g = fixtures::fixture_graph();
    const auto b = topk_next(g, "B", 5);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == NextAction{"C", 2.0 / 3.0});
    CHECK(b[1] == NextAction{"D", 1.0 / 3.0});
    CHECK(topk_next(g, "D", 1) == std::vector<NextAction>{{"A", 1.0}});
    CHECK(topk_next(g, "nope", 3).empty());
    CHECK_THROWS_AS(topk_next(g, "B", 0), Error);
}

TEST_CASE("anomaly invariants on random graphs")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 400; ++trial) {
        const auto rg = oracle::random_graph(rng);
        const auto g = ReferenceGraph::from_counts(Level::Action, rg.labels, rg.counts);
        const auto scaled = scale_counts(g, 2 + trial % 4);
        AnomalyConfig on;
        AnomalyConfig off;
        off.use_certainty = false;
        for (const auto& from : rg.labels) {
            for (const auto& to : rg.labels) {
                const auto a_on = assess_transition(g, from, to, on);
                const auto a_off = assess_transition(g, from, to, off);
                CHECK(a_on.score >= 0.0);
                CHECK(a_on.score <= 1.0);
                CHECK(a_on.certainty >= 0.0);
                CHECK(a_on.certainty <= 1.0);
                CHECK(a_off.score >= a_on.score);
                const auto& row = g.row(from);
                const bool attains_max =
                    a_on.rank && row.successors[*a_on.rank - 1].count == row.successors[0].count;
                CHECK((a_on.score == 0.0) == attains_max);
                CHECK(assess_transition(scaled, from, to, on) == a_on);
                CHECK(std::abs(a_on.score - oracle::anomaly(rg.counts, from, to, true, false)) <= 1e-9);
            }
        }
    }
}
