#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "flowguard/corpus.hpp"
#include "flowguard/error.hpp"
#include "flowguard/labels.hpp"
#include "flowguard/stats.hpp"

using namespace flowguard;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a flowguard::Error");
    return ErrorCode::Io;
}

AnnotatedSegment seg(std::string video, std::string verb, std::string noun, double s, double e)
{
    return {std::move(video), std::move(verb), std::move(noun), s, e};
}

} // namespace

TEST_CASE("compose_action_label joins verb and noun")
{
    CHECK(compose_action_label("take", "bolt").text() == "take_bolt");
    CHECK(compose_action_label("align", "objects").text() == "align_objects");
    CHECK(compose_action_label("take", "bolt").level() == Level::Action);
    CHECK(code_of([] { compose_action_label("screw", ""); }) == ErrorCode::EmptyToken);
    CHECK(code_of([] { compose_action_label("", "bolt"); }) == ErrorCode::EmptyToken);
}

TEST_CASE("labels reject commas and whitespace")
{
    CHECK(code_of([] { validate_token("a,b"); }) == ErrorCode::InvalidLabel);
    CHECK(code_of([] { validate_token("a b"); }) == ErrorCode::InvalidLabel);
    CHECK(code_of([] { validate_token("a\nb"); }) == ErrorCode::InvalidLabel);
    CHECK(code_of([] { ActionLabel(Level::Action, "take"); }) == ErrorCode::InvalidLabel);
    CHECK_NOTHROW(ActionLabel(Level::Verb, "take"));
}

TEST_CASE("levels parse and print")
{
    for (Level l : {Level::Action, Level::Verb, Level::Noun})
        CHECK(parse_level(to_string(l)) == l);
    CHECK(code_of([] { parse_level("object"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("derive_sequences projects per video without concatenation")
{
    TrainingCorpus one({seg("v", "take", "bolt", 0, 1), seg("v", "put", "bolt", 1, 2)});
    CHECK(derive_sequences(one, Level::Verb) == std::vector<Sequence>{{"take", "put"}});
    CHECK(derive_sequences(one, Level::Action) == std::vector<Sequence>{{"take_bolt", "put_bolt"}});
    CHECK(derive_sequences(one, Level::Noun) == std::vector<Sequence>{{"bolt", "bolt"}});

    TrainingCorpus two({seg("v2", "screw", "bolt", 0, 1), seg("v1", "take", "bolt", 5, 6),
                        seg("v1", "put", "bolt", 1, 2), seg("v2", "take", "rod", 3, 4)});
    // Oracle: per-video lists built by hand from the rows above, sorted by start.
    const std::vector<Sequence> expected{{"put", "take"}, {"screw", "take"}};
    CHECK(derive_sequences(two, Level::Verb) == expected);

    TrainingCorpus single({seg("v", "take", "bolt", 0, 1)});
    CHECK(derive_sequences(single, Level::Verb) == std::vector<Sequence>{{"take"}});
}

TEST_CASE("verb projection of verb labels is idempotent")
{
    const auto corpus = fixtures::fixture_corpus();
    const auto verbs = derive_sequences(corpus, Level::Verb);
    std::vector<AnnotatedSegment> relabelled;
    for (const auto& [id, segs] : corpus.videos())
        for (const auto& s : segs)
            relabelled.push_back(seg(id, s.label(Level::Verb), s.noun, s.start_s, s.end_s));
    CHECK(derive_sequences(TrainingCorpus(relabelled), Level::Verb) == verbs);
}

TEST_CASE("segment ordering is independent of input permutation")
{
    std::vector<AnnotatedSegment> segs{seg("v", "b", "x", 1, 2), seg("v", "a", "x", 1, 2),
                                       seg("v", "c", "x", 1, 3), seg("v", "d", "x", 0, 5),
                                       seg("w", "e", "y", 2, 3)};
    const TrainingCorpus reference(segs);
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        std::shuffle(segs.begin(), segs.end(), rng);
        CHECK(TrainingCorpus(segs) == reference);
    }
    const auto& v = reference.videos().at("v");
    CHECK(v[0].verb == "d");
    CHECK(v[1].verb == "a");
    CHECK(v[2].verb == "b");
    CHECK(v[3].verb == "c");
}

TEST_CASE("segments need a positive finite interval")
{
    CHECK(code_of([] { TrainingCorpus({seg("v", "a", "x", 2, 2)}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { TrainingCorpus({seg("v", "a", "x", -1, 2)}); })
          == ErrorCode::InvalidArgument);
}

TEST_CASE("reference times are per-label medians")
{
    TrainingCorpus odd({seg("v", "x", "n", 0, 1), seg("v", "x", "n", 1, 3), seg("v", "x", "n", 3, 13)});
    CHECK(compute_reference_times(odd, Level::Verb).at("x") == doctest::Approx(2.0));

    TrainingCorpus even({seg("v", "x", "n", 0, 1), seg("v", "x", "n", 1, 4)});
    CHECK(compute_reference_times(even, Level::Verb).at("x") == doctest::Approx(2.0));

    const auto times = compute_reference_times(even, Level::Verb);
    CHECK_FALSE(times.find("unseen").has_value());
    CHECK(code_of([&] { times.at("unseen"); }) == ErrorCode::MissingReferenceTime);

    const auto fixture = compute_reference_times(fixtures::fixture_corpus(), Level::Verb);
    CHECK(fixture.at("A") == 2.0);
    CHECK(fixture.at("B") == 1.0);
    CHECK(fixture.at("C") == 4.0);
    CHECK(fixture.at("D") == 4.0);
    CHECK(compute_reference_times(fixtures::fixture_corpus(), Level::Action).at("A_part") == 2.0);
}

TEST_CASE("inserting a duplicate of the median leaves it unchanged")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + trial % 9);
        for (auto& x : v)
            x = dist(rng);
        const double m = median(v);
        v.push_back(m);
        CHECK(median(v) == doctest::Approx(m).epsilon(1e-12));
    }
}

TEST_CASE("box summary uses Tukey hinges and 1.5 IQR fences")
{
    // Sorted: 1 2 3 4 5 6 7 8 100. Hinges of 9 values include the median.
    const std::vector<double> v{5, 1, 100, 3, 2, 8, 4, 7, 6};
    const auto box = box_summary(v);
    CHECK(box.median == 5.0);
    CHECK(box.q1 == 3.0);
    CHECK(box.q3 == 7.0);
    CHECK(box.min == 1.0);
    CHECK(box.max == 8.0);
    CHECK(box.outliers == std::vector<double>{100.0});
    CHECK(box.count == 9);

    const std::vector<double> even{1, 2, 3, 4};
    const auto b2 = box_summary(even);
    CHECK(b2.q1 == 1.5);
    CHECK(b2.q3 == 3.5);
    CHECK(b2.median == 2.5);
    CHECK(b2.outliers.empty());
}
