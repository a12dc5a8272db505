#include <doctest.h>

#include "elliott/errors.hpp"
#include "elliott/json_io.hpp"
#include "elliott/synth.hpp"
#include "support/oracles.hpp"

using namespace elliott;
using testsupport::zigzag;

namespace {

template <typename T>
T round_trip(const T& value) {
    T out;
    from_json(nlohmann::json::parse(to_json(value).dump()), out);
    return out;
}

ImpulsePattern sample_pattern() {
    const SwingSequence seq = zigzag(
        SwingKind::Low, {{0, 100}, {3, 110}, {5, 104}, {9, 122}, {12, 114}, {16, 130}});
    return find_impulse(seq, Completeness::Complete5, WaveConfig{})[0];
}

} // namespace

TEST_SUITE_BEGIN("json_io");

TEST_CASE("value types round-trip exactly") {
    // awkward doubles on purpose: shortest-exact formatting must preserve them
    const Candle candle{1693526400, 0.1, 1.0 / 3.0, 0.05, 0.30000000000000004, 1e-9};
    CHECK(round_trip(candle) == candle);

    const SwingPoint pivot{17, 107.96600000000001, SwingKind::High};
    CHECK(round_trip(pivot) == pivot);

    Wave wave;
    wave.label = WaveLabel::WB;
    wave.start = pivot;
    wave.end = SwingPoint{21, 99.9, SwingKind::Low};
    CHECK(round_trip(wave) == wave);

    RuleReport rules{true, false, true, true};
    CHECK(round_trip(rules) == rules);

    FibAssessment fib;
    fib.ratio_w2_w1 = 0.7;
    fib.ratio_w4_w3 = 0.618;
    fib.conformance_score = 0.295;
    CHECK(round_trip(fib) == fib); // empty slots stay empty

    PatternStats stats{3, 1, 2};
    CHECK(round_trip(stats) == stats);
}

TEST_CASE("pattern types round-trip") {
    const ImpulsePattern pattern = sample_pattern();
    CHECK(round_trip(pattern) == pattern);

    const SwingSequence seq = zigzag(SwingKind::High, {{0, 130}, {3, 118}, {6, 125}, {9, 112}});
    const CorrectivePattern corrective = find_corrective(seq, std::nullopt, WaveConfig{})[0];
    CHECK(round_trip(corrective) == corrective);
}

TEST_CASE("forecast and learning types round-trip") {
    Forecast f;
    f.symbol = "AAPL";
    f.signal = Signal::Sell;
    f.direction = Direction::Down;
    f.entry = 130.0;
    f.primary_target = 114.0;
    f.stop_loss = 136.112;
    f.issued_at_index = 16;
    f.issued_at_ts = 1693526400;
    f.horizon_candles = 5;
    CHECK(round_trip(f) == f);
    f.secondary_target = 125.0;
    CHECK(round_trip(f) == f);

    StateKey key;
    key.symbol = "AAPL";
    key.kind = Completeness::Complete5;
    key.direction = Direction::Down;
    key.fib_bucket = 4;
    key.trend = TrendBucket::Below;
    CHECK(round_trip(key) == key);

    KnowledgeRecord rec;
    rec.key = key;
    rec.interval = Interval::Hourly;
    rec.samples = 22;
    rec.hit_rate = 2.0 / 3.0;
    rec.mean_forward_return = -0.0123;
    rec.q_values = {0.5, -0.25, 0.0};
    rec.trained_through = 1700000000;
    CHECK(round_trip(rec) == rec);
}

TEST_CASE("series and transcript types round-trip") {
    const SynthResult synth = synth_series(SynthSpec{}, 3);
    CHECK(round_trip(synth.series) == synth.series);

    AgentMessage msg;
    msg.sequence = 4;
    msg.from = Role::Coordinator;
    msg.to = Role::WaveAnalyst;
    msg.kind = "wave_request";
    msg.payload = {{"symbol", "AAPL"}, {"count", 3}};
    CHECK(round_trip(msg) == msg);
}

TEST_CASE("bundle round-trips") {
    AnalysisBundle b;
    b.run_id = "AAPL_1d_20230901_20240830_s42";
    b.symbol = "AAPL";
    b.interval = Interval::Daily;
    b.from_ts = 1693526400;
    b.to_ts = 1725062400;
    b.seed = 42;
    b.series = synth_series(SynthSpec{}, 3).series;
    b.swings = zigzag(SwingKind::Low, {{0, 100}, {8, 110}, {13, 105}});
    b.stats = PatternStats{1, 1, 1};
    b.patterns = {sample_pattern()};
    Forecast f;
    f.symbol = "AAPL";
    b.forecasts = {ForecastPair{f, f}};
    b.trained_now = true;
    CHECK(round_trip(b) == b);
}

TEST_CASE("malformed documents raise parse errors") {
    Candle c;
    CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"open": 1})"), c), ParseError);
    CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"timestamp": "x", "open": 1, "high": 1,
                    "low": 1, "close": 1, "volume": 1})"),
                              c),
                    ParseError);

    SwingPoint p;
    CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"index": 1, "price": 2,
                    "kind": "diagonal"})"),
                              p),
                    ParseError);

    Forecast f;
    CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"symbol": "A"})"), f), ParseError);

    KnowledgeRecord r;
    CHECK_THROWS_AS(from_json(nlohmann::json::parse("[]"), r), ParseError);
}

TEST_SUITE_END();
