#include <doctest.h>

#include <cmath>

#include "elliott/errors.hpp"
#include "elliott/forecast.hpp"
#include "elliott/waves.hpp"
#include "support/oracles.hpp"

using namespace elliott;
using testsupport::c5_probe;
using testsupport::series_from_closes;
using testsupport::zigzag;

namespace {

// Close path realizing the hand sequence used across the wave tests: an
// up-impulse 100-110-104-122-114-130 with pivots at 0/3/5/9/12/16, then an
// A-B-C back to 112 at 20/23/27, then a small rebound.
CandleSeries hand_series(double last_close = 113.0) {
    return series_from_closes({100, 104, 108, 110, 107, 104, 110, 114, 118, 122,
                               119, 116, 114, 120, 125, 128, 130, 126, 122, 120,
                               118, 121, 123, 125, 121, 117, 114, 112, last_close});
}

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

TEST_SUITE_BEGIN("forecast");

TEST_CASE("horizon derives from wave 1") {
    Wave w1;
    w1.start = SwingPoint{0, 100.0, SwingKind::Low};
    w1.end = SwingPoint{10, 110.0, SwingKind::High};
    CHECK(horizon(w1) == 16); // round(1.62 * 10)

    w1.end.candle_index = 1;
    CHECK(horizon(w1) == 2); // round(1.62), at least one either way

    SUBCASE("price unit scales by the wave's own speed") {
        const CandleSeries s = series_from_closes({100, 102, 104, 106, 110});
        Wave w;
        w.start = SwingPoint{0, 100.0, SwingKind::Low};
        w.end = SwingPoint{4, 110.0, SwingKind::High};
        // travel 10 over 4 candles -> speed 2.5 -> round(1.62 * 10 / 2.5) = 6
        CHECK(horizon(w, HorizonUnit::Price, &s) == 6);
        CHECK_THROWS_AS(horizon(w, HorizonUnit::Price, nullptr), ValidationError);
        w.end.candle_index = 9;
        CHECK_THROWS_AS(horizon(w, HorizonUnit::Price, &s), ValidationError);
    }
}

TEST_CASE("four-wave forecast calls the continuation") {
    const CandleSeries s = hand_series();
    const auto patterns = find_impulse(kHand, Completeness::Incomplete4, WaveConfig{});
    REQUIRE_FALSE(patterns.empty());
    const auto f = make_forecast(patterns[0], std::nullopt, s, ForecastConfig{});
    REQUIRE(f.has_value());

    CHECK(f->signal == Signal::Buy);
    CHECK(f->direction == Direction::Up);
    CHECK(f->issued_at_index == 12);
    CHECK(f->issued_at_ts == s.at(12).timestamp);
    CHECK(f->entry == 114.0);
    CHECK(f->primary_target == 122.0 + 1.618 * 10.0);
    CHECK_FALSE(f->secondary_target.has_value());
    // stop sits at the wave-4 pivot; the entry candle closed exactly there,
    // so the level is nudged one ulp to keep the ordering strict
    CHECK(f->stop_loss == std::nextafter(114.0, 0.0));
    CHECK(f->horizon_candles == 5); // round(1.62 * 3)
}

TEST_CASE("five-wave forecast alone calls the reversal") {
    const CandleSeries s = hand_series();
    const auto patterns = find_impulse(kHand, Completeness::Complete5, WaveConfig{});
    REQUIRE(patterns.size() == 1);
    const auto f = make_forecast(patterns[0], std::nullopt, s, ForecastConfig{});
    REQUIRE(f.has_value());

    CHECK(f->signal == Signal::Sell);
    CHECK(f->direction == Direction::Down);
    CHECK(f->issued_at_index == 16);
    CHECK(f->entry == 130.0);
    CHECK(f->primary_target == 114.0);           // wave-5 origin
    CHECK(f->stop_loss == 130.0 + 0.382 * 16.0); // buffered beyond the extreme
}

TEST_CASE("five-wave plus correction calls the resumption") {
    const CandleSeries s = hand_series();
    const auto patterns = find_impulse(kHand, Completeness::Complete5, WaveConfig{});
    REQUIRE(patterns.size() == 1);
    const auto correctives = find_corrective(kHand, patterns[0], WaveConfig{});
    REQUIRE(correctives.size() == 1);

    const auto f = make_forecast(patterns[0], correctives[0], s, ForecastConfig{});
    REQUIRE(f.has_value());
    CHECK(f->signal == Signal::Buy);
    CHECK(f->issued_at_index == s.size() - 1);
    CHECK(f->entry == 113.0);
    CHECK(f->primary_target == 130.0);   // impulse extreme
    CHECK(f->secondary_target == 125.0); // wave-B pivot
    CHECK(f->stop_loss == 112.0);        // wave-C pivot

    SUBCASE("degenerate geometry yields no forecast") {
        // last close above the primary target: entry not below target
        const CandleSeries rallied = hand_series(131.0);
        CHECK_FALSE(make_forecast(patterns[0], correctives[0], rallied, ForecastConfig{}).has_value());
    }
    SUBCASE("detached corrective is rejected") {
        const auto loose = find_corrective(kHand, std::nullopt, WaveConfig{});
        REQUIRE(loose.size() == 3);
        // the window starting at pivot 0 does not attach to the impulse end
        CHECK_THROWS_AS(make_forecast(patterns[0], loose[0], s, ForecastConfig{}), ValidationError);
    }
    SUBCASE("corrective with a four-wave impulse is rejected") {
        const auto fours = find_impulse(kHand, Completeness::Incomplete4, WaveConfig{});
        REQUIRE_FALSE(fours.empty());
        CHECK_THROWS_AS(make_forecast(fours[0], correctives[0], s, ForecastConfig{}),
                        ValidationError);
    }
}

TEST_CASE("forward-mean criterion") {
    const CandleSeries s = series_from_closes({100, 101, 102, 103, 99});

    auto up = evaluate_forward_mean(Direction::Up, 0, 3, s);
    REQUIRE(up.has_value());
    CHECK(up->correct);
    CHECK(up->metric == 102.0);
    CHECK(up->evaluated_at_index == 3);
    CHECK(up->criterion == EvalCriterion::Incomplete4Mean);

    auto down = evaluate_forward_mean(Direction::Down, 0, 3, s);
    REQUIRE(down.has_value());
    CHECK_FALSE(down->correct);

    SUBCASE("ties count as incorrect") {
        const CandleSeries flat = series_from_closes({100, 100, 100, 100});
        CHECK_FALSE(evaluate_forward_mean(Direction::Up, 0, 2, flat)->correct);
        CHECK_FALSE(evaluate_forward_mean(Direction::Down, 0, 2, flat)->correct);
    }
    SUBCASE("window must fit inside the series") {
        CHECK(evaluate_forward_mean(Direction::Up, 0, 4, s).has_value()); // fills the series
        CHECK(evaluate_forward_mean(Direction::Up, 0, 5, s) == std::nullopt);
        CHECK(evaluate_forward_mean(Direction::Up, 3, 1, s).has_value()); // ends on the last candle
        CHECK(evaluate_forward_mean(Direction::Up, 4, 1, s) == std::nullopt);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(evaluate_forward_mean(Direction::Up, 0, 0, s), ValidationError);
        CHECK_THROWS_AS(evaluate_forward_mean(Direction::Up, 5, 1, s), ValidationError);
    }
    SUBCASE("evaluate_incomplete applies the forecast fields") {
        Forecast f;
        f.direction = Direction::Up;
        f.issued_at_index = 0;
        f.horizon_candles = 3;
        CHECK(evaluate_incomplete(f, s) == evaluate_forward_mean(Direction::Up, 0, 3, s));
    }
}

TEST_CASE("symmetry criterion") {
    const ImpulsePattern probe = c5_probe(Direction::Up, 2, 130.0, 16.0);

    SUBCASE("confirmed counter-leg matching wave 5 is correct") {
        const CandleSeries s = series_from_closes({100, 115, 130, 126, 120, 114, 118});
        const auto out = evaluate_complete(probe, s, 0.10, 0.02);
        REQUIRE(out.has_value());
        CHECK(out->correct);
        CHECK(out->metric == 1.0); // (130 - 114) / 16
        CHECK(out->evaluated_at_index == 6);
        CHECK(out->criterion == EvalCriterion::Complete5Symmetry);
    }
    SUBCASE("taking out the impulse extreme settles as incorrect") {
        const CandleSeries s = series_from_closes({100, 115, 130, 129, 131.5});
        const auto out = evaluate_complete(probe, s, 0.10, 0.02);
        REQUIRE(out.has_value());
        CHECK_FALSE(out->correct);
        CHECK(out->evaluated_at_index == 4);
        CHECK(out->metric == (130.0 - 129.0) / 16.0);
    }
    SUBCASE("running out of data yields nothing") {
        const CandleSeries s = series_from_closes({100, 115, 130, 126, 120});
        CHECK(evaluate_complete(probe, s, 0.10, 0.02) == std::nullopt);
    }
    SUBCASE("tolerance bound is inclusive") {
        // counter-leg 20 against wave 5 of 16 -> metric exactly 1.25
        const CandleSeries s = series_from_closes({100, 115, 130, 110, 113});
        CHECK(evaluate_complete(probe, s, 0.25, 0.02)->correct);
        CHECK_FALSE(evaluate_complete(probe, s, 0.24, 0.02)->correct);
    }
    SUBCASE("a bar cannot confirm with its own extreme") {
        CandleSeries s = series_from_closes({100, 115, 130});
        // wide bar: low 120 prints a new counter-extreme while the high sits
        // far above the would-be trigger
        s.candles.push_back(Candle{s.candles.back().timestamp + 86400, 130.0, 130.0, 120.0, 123.0,
                                   1000.0});
        s.candles.push_back(Candle{s.candles.back().timestamp + 86400, 123.0, 123.0, 122.5, 122.5,
                                   1000.0});
        const auto out = evaluate_complete(probe, s, 0.10, 0.02);
        REQUIRE(out.has_value());
        CHECK(out->evaluated_at_index == 4); // the later bar confirms, not the wide one
        CHECK(out->metric == (130.0 - 120.0) / 16.0);
        CHECK_FALSE(out->correct);
    }
    SUBCASE("downward impulse mirrors the logic") {
        const ImpulsePattern down = c5_probe(Direction::Down, 2, 70.0, 16.0);
        const CandleSeries s = series_from_closes({100, 85, 70, 74, 72.5});
        const auto out = evaluate_complete(down, s, 0.10, 0.02);
        REQUIRE(out.has_value());
        CHECK(out->evaluated_at_index == 4);
        CHECK(out->metric == (74.0 - 70.0) / 16.0);
        CHECK_FALSE(out->correct);
    }
    SUBCASE("validation") {
        const CandleSeries s = series_from_closes({100, 115, 130, 126});
        const ImpulsePattern four = [] {
            ImpulsePattern p = c5_probe(Direction::Up, 2, 130.0, 16.0);
            p.completeness = Completeness::Incomplete4;
            return p;
        }();
        CHECK_THROWS_AS(evaluate_complete(four, s, 0.10, 0.02), ValidationError);
        CHECK_THROWS_AS(evaluate_complete(probe, s, 0.10, 0.0), ValidationError);
        CHECK_THROWS_AS(evaluate_complete(probe, s, 0.10, 1.0), ValidationError);
        CHECK_THROWS_AS(evaluate_complete(c5_probe(Direction::Up, 9, 130.0, 16.0), s, 0.10, 0.02),
                        ValidationError);
    }
}

TEST_CASE("signal names") {
    CHECK(signal_name(Signal::Buy) == "buy");
    CHECK(signal_from_name("hold") == Signal::Hold);
    CHECK_FALSE(signal_from_name("short").has_value());
}

TEST_SUITE_END();
