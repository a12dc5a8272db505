#pragma once

#include <cstdint>
#include <vector>

#include "elliott/candle.hpp"
#include "elliott/rng.hpp"
#include "elliott/swings.hpp"
#include "elliott/waves.hpp"

namespace elliott {

enum class SynthPattern { Impulse4, Impulse5, Zigzag };

// Blueprint for a synthetic pattern series. Leg sizes are expressed relative
// to wave 1 (wave A for zigzags). The generated pivots obey the hard wave
// rules by construction; specs that cannot (full retrace, wave-4 overlap,
// non-positive prices) are rejected.
struct SynthSpec {
    SynthPattern pattern = SynthPattern::Impulse5;
    Direction direction = Direction::Up;
    std::string symbol = "SYNTH";
    Interval interval = Interval::Daily;
    std::int64_t start_ts = 1577836800; // 2020-01-01
    double start_price = 100.0;
    double wave1_length = 10.0;
    std::vector<int> candles_per_wave; // one entry per leg; empty = defaults
    double w2_of_w1 = 0.5;
    double w3_of_w1 = 1.618;
    double w4_of_w3 = 0.382;
    double w5_of_w1 = 1.0;
    double b_of_a = 0.5;
    double c_of_a = 1.0;
    double noise = 0.0; // absolute close jitter on interior candles
    double base_volume = 1000.0;

    friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

struct SynthResult {
    CandleSeries series;
    SwingSequence pivots; // the constructed pattern pivots, in candle order
};

// Deterministic: equal (spec, seed) pairs produce identical series. Interior
// candles stay strictly inside their leg's range, so every annotated pivot is
// a strict local extreme. Throws ValidationError on an unsatisfiable spec.
SynthResult synth_series(const SynthSpec& spec, std::uint64_t seed);

// Building blocks, also used by the fixture generator. append_leg walks the
// close from the last candle's close to `target` over `count` candles, the
// last landing exactly on target.
void append_pivot_candle(CandleSeries& series, std::int64_t ts, double price, double volume);
void append_leg(CandleSeries& series, double target, int count, double noise, double base_volume,
                Rng& rng);

} // namespace elliott
