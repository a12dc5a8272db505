#include <doctest.h>

#include "elliott/errors.hpp"
#include "elliott/waves.hpp"
#include "support/oracles.hpp"

using namespace elliott;
using testsupport::zigzag;

namespace {

// 100 -> 110 -> 104 -> 122 -> 114 -> 130, then an A-B-C back to 112.
const SwingSequence kHand = zigzag(SwingKind::Low, {{0, 100},
                                                    {3, 110},
                                                    {5, 104},
                                                    {9, 122},
                                                    {12, 114},
                                                    {16, 130},
                                                    {20, 118},
                                                    {23, 125},
                                                    {27, 112}});

} // namespace

TEST_SUITE_BEGIN("waves");

TEST_CASE("five-wave detection on the hand sequence") {
    const auto patterns = find_impulse(kHand, Completeness::Complete5, WaveConfig{});
    REQUIRE(patterns.size() == 1);
    const ImpulsePattern& p = patterns[0];

    CHECK(p.direction == Direction::Up);
    CHECK(p.completeness == Completeness::Complete5);
    REQUIRE(p.waves.size() == 5);
    CHECK(p.start() == kHand[0]);
    CHECK(p.final_pivot() == kHand[5]);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(p.waves[i].label == WaveLabel(i));
        CHECK(p.waves[i].start == kHand[i]);
        CHECK(p.waves[i].end == kHand[i + 1]);
    }
    CHECK(p.waves[0].price_length() == 10.0);
    CHECK(p.waves[2].price_length() == 18.0);
    CHECK(p.waves[0].duration() == 3);
    CHECK(p.rules.all());
}

TEST_CASE("four-wave detection rejects the descending window") {
    const auto patterns = find_impulse(kHand, Completeness::Incomplete4, WaveConfig{});
    // Window at pivot 0 passes; the one at pivot 1 fully retraces wave 1, the
    // later ones fail overlap or retrace checks.
    std::size_t in_impulse = 0;
    for (const auto& p : patterns) {
        if (p.start().candle_index <= 16) ++in_impulse;
    }
    CHECK(in_impulse >= 1);
    REQUIRE_FALSE(patterns.empty());
    CHECK(patterns[0].start() == kHand[0]);
    CHECK(patterns[0].waves.size() == 4);
    CHECK(patterns[0].final_pivot() == kHand[4]);

    // brute-force enumeration agrees on both completeness levels
    for (bool five : {false, true}) {
        const auto got = find_impulse(kHand, five ? Completeness::Complete5 : Completeness::Incomplete4,
                                      WaveConfig{});
        const auto want = testsupport::oracle_impulse_starts(kHand, five, true);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].start() == kHand[want[i]]);
        }
    }
}

TEST_CASE("hard rules reject violating windows") {
    SUBCASE("wave 2 full retrace") {
        const auto seq = zigzag(SwingKind::Low, {{0, 100}, {2, 110}, {4, 99}, {6, 122}, {8, 112}});
        CHECK(find_impulse(seq, Completeness::Incomplete4, WaveConfig{}).empty());
    }
    SUBCASE("wave 4 overlaps wave 1") {
        const auto seq = zigzag(SwingKind::Low, {{0, 100}, {2, 110}, {4, 104}, {6, 125}, {8, 109}});
        CHECK(find_impulse(seq, Completeness::Incomplete4, WaveConfig{}).empty());
    }
    SUBCASE("wave 3 strictly shortest") {
        // lengths 10, 9, 10: wave 3 shorter than both 1 and 5
        const auto seq = zigzag(
            SwingKind::Low, {{0, 100}, {2, 110}, {4, 104}, {6, 113}, {8, 111}, {10, 121}});
        CHECK(find_impulse(seq, Completeness::Complete5, WaveConfig{}).empty());

        // trimming wave 5 below wave 3 lifts the veto
        auto ok = seq;
        ok[5].price = 119.5; // w5 = 8.5 < w3 = 9
        CHECK(find_impulse(ok, Completeness::Complete5, WaveConfig{}).size() == 1);
    }
    SUBCASE("four-wave dominance is config-gated") {
        // w3 = 8 < w1 = 10
        const auto seq = zigzag(SwingKind::Low, {{0, 100}, {2, 110}, {4, 104}, {6, 112}, {8, 111}});
        CHECK(find_impulse(seq, Completeness::Incomplete4, WaveConfig{}).empty());
        WaveConfig relaxed;
        relaxed.require_w3_dominance = false;
        const auto got = find_impulse(seq, Completeness::Incomplete4, relaxed);
        REQUIRE(got.size() == 1);
        CHECK(got[0].rules.all()); // inapplicable rules report true
    }
}

TEST_CASE("invalid sequences are rejected outright") {
    SwingSequence not_alternating = kHand;
    not_alternating[2].kind = SwingKind::High;
    CHECK_THROWS_AS(find_impulse(not_alternating, Completeness::Complete5, WaveConfig{}),
                    ValidationError);

    SwingSequence wrong_way = kHand;
    wrong_way[1].price = 95.0; // a high below the preceding low
    CHECK_THROWS_AS(find_impulse(wrong_way, Completeness::Complete5, WaveConfig{}),
                    ValidationError);

    SwingSequence unordered = kHand;
    unordered[1].candle_index = 0;
    CHECK_THROWS_AS(find_impulse(unordered, Completeness::Complete5, WaveConfig{}),
                    ValidationError);
}

TEST_CASE("fib_level arithmetic") {
    CHECK(fib_level(200.0, 100.0, 0.618) == doctest::Approx(138.2).epsilon(1e-12));
    CHECK(fib_level(200.0, 100.0, 0.0) == 200.0);
    CHECK(fib_level(200.0, 100.0, 1.0) == 100.0);
    CHECK(fib_level(200.0, 100.0, 1.618) == doctest::Approx(38.2).epsilon(1e-12));

    CHECK_THROWS_AS(fib_level(100.0, 100.0, 0.5), ValidationError);
    CHECK_THROWS_AS(fib_level(90.0, 100.0, 0.5), ValidationError);
    CHECK_THROWS_AS(fib_level(200.0, 100.0, -0.1), ValidationError);
}

TEST_CASE("ratio_score proximity") {
    const WaveConfig cfg;
    CHECK(ratio_score(0.618, cfg.canonical_ratios, 0.10) == 1.0);
    CHECK(ratio_score(0.70, cfg.canonical_ratios, 0.10) == doctest::Approx(0.18).epsilon(1e-9));
    CHECK(ratio_score(0.80, cfg.canonical_ratios, 0.10) == 0.0);
    CHECK(ratio_score(5.0, cfg.canonical_ratios, 0.10) == 0.0);

    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double r = rng.range(0.0, 3.0);
        CHECK(ratio_score(r, cfg.canonical_ratios, 0.10) ==
              doctest::Approx(testsupport::oracle_ratio_score(r, cfg.canonical_ratios, 0.10))
                  .epsilon(1e-12));
    }
}

TEST_CASE("fibonacci assessment of impulse legs") {
    // legs 10, 7, 16.18, 8.09, 9.5 -> ratios 0.7, 1.618, 0.5, 0.95
    const SwingSequence seq = zigzag(
        SwingKind::Low,
        {{0, 100.0}, {2, 110.0}, {4, 103.0}, {7, 119.18}, {9, 111.09}, {12, 120.59}});
    const auto patterns = find_impulse(seq, Completeness::Complete5, WaveConfig{});
    REQUIRE(patterns.size() == 1);
    const FibAssessment& fib = patterns[0].fib;

    REQUIRE(fib.ratio_w2_w1.has_value());
    REQUIRE(fib.ratio_w3_w1.has_value());
    REQUIRE(fib.ratio_w4_w3.has_value());
    REQUIRE(fib.ratio_w5_w1.has_value());
    CHECK(*fib.ratio_w2_w1 == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(*fib.ratio_w3_w1 == doctest::Approx(1.618).epsilon(1e-12));
    CHECK(*fib.ratio_w4_w3 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*fib.ratio_w5_w1 == doctest::Approx(0.95).epsilon(1e-12));
    // scores 0.18, 1, 1, 0.5 at tolerance 0.10 -> mean 0.67
    CHECK(fib.conformance_score == doctest::Approx(0.67).epsilon(1e-6));
}

TEST_CASE("corrective zigzag detection") {
    const auto impulses = find_impulse(kHand, Completeness::Complete5, WaveConfig{});
    REQUIRE(impulses.size() == 1);

    SUBCASE("attached to the impulse") {
        const auto correctives = find_corrective(kHand, impulses[0], WaveConfig{});
        REQUIRE(correctives.size() == 1);
        const CorrectivePattern& c = correctives[0];
        CHECK(c.direction == Direction::Down);
        REQUIRE(c.waves.size() == 3);
        CHECK(c.waves[0].label == WaveLabel::WA);
        CHECK(c.waves[1].label == WaveLabel::WB);
        CHECK(c.waves[2].label == WaveLabel::WC);
        CHECK(c.start() == kHand[5]);
        CHECK(c.final_pivot() == kHand[8]);
        CHECK(c.waves[0].price_length() == 12.0);
        CHECK(c.waves[1].price_length() == 7.0);
        CHECK(c.waves[2].price_length() == 13.0);
        // B/A and C/A occupy the first two ratio slots
        REQUIRE(c.fib.ratio_w2_w1.has_value());
        REQUIRE(c.fib.ratio_w3_w1.has_value());
        CHECK_FALSE(c.fib.ratio_w4_w3.has_value());
        CHECK(*c.fib.ratio_w2_w1 == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
        CHECK(*c.fib.ratio_w3_w1 == doctest::Approx(13.0 / 12.0).epsilon(1e-12));
        CHECK(c.fib.conformance_score == doctest::Approx(0.41).epsilon(1e-6));
    }
    SUBCASE("unattached enumeration finds every qualifying window") {
        const auto all = find_corrective(kHand, std::nullopt, WaveConfig{});
        CHECK(all.size() == 3);
    }
    SUBCASE("wave B retracing past A's origin disqualifies") {
        const auto seq = zigzag(SwingKind::High, {{0, 130}, {3, 118}, {6, 131}, {9, 112}});
        CHECK(find_corrective(seq, std::nullopt, WaveConfig{}).empty());
    }
    SUBCASE("wave C stopping short of A's end disqualifies") {
        const auto seq = zigzag(SwingKind::High, {{0, 130}, {3, 118}, {6, 125}, {9, 120}});
        CHECK(find_corrective(seq, std::nullopt, WaveConfig{}).empty());
    }
}

TEST_CASE("name round-trips") {
    CHECK(direction_name(Direction::Up) == "up");
    CHECK(direction_from_name("down") == Direction::Down);
    CHECK_FALSE(direction_from_name("sideways").has_value());
    CHECK(completeness_code(Completeness::Incomplete4) == "impulse4");
    CHECK(completeness_from_code("impulse5") == Completeness::Complete5);
    CHECK_FALSE(completeness_from_code("impulse6").has_value());
    CHECK(completeness_display(Completeness::Incomplete4) == "1-2-3-4");
    CHECK(completeness_display(Completeness::Complete5) == "1-2-3-4-5");
    CHECK(wave_label_name(WaveLabel::W1) == "1");
    CHECK(wave_label_name(WaveLabel::WC) == "C");
}

TEST_SUITE_END();
