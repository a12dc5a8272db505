#include "elliott/synth.hpp"

#include <algorithm>
#include <cmath>

#include "elliott/errors.hpp"

namespace elliott {

void append_pivot_candle(CandleSeries& series, std::int64_t ts, double price, double volume) {
    series.candles.push_back(Candle{ts, price, price, price, price, volume});
}

void append_leg(CandleSeries& series, double target, int count, double noise, double base_volume,
                Rng& rng) {
    if (series.empty()) throw ValidationError("append_leg: series needs a seed candle");
    if (count < 1) throw ValidationError("append_leg: count must be positive");
    const double from = series.candles.back().close;
    if (target == from) throw ValidationError("append_leg: leg must move");
    const std::int64_t step = interval_seconds(series.interval);

    // Random positive weights give organic but strictly monotone base steps.
    std::vector<double> weights(static_cast<std::size_t>(count));
    double total = 0.0;
    for (double& w : weights) {
        w = 1.0 + 0.6 * rng.unit();
        total += w;
    }

    const double lo = std::min(from, target);
    const double hi = std::max(from, target);
    const double margin = 0.02 * (hi - lo);
    double cum = 0.0;
    for (int j = 1; j <= count; ++j) {
        cum += weights[std::size_t(j - 1)];
        double close = j == count ? target : from + (target - from) * (cum / total);
        if (j < count) {
            if (noise > 0.0) close += noise * (2.0 * rng.unit() - 1.0);
            // Interior closes stay strictly inside the leg so the endpoints
            // remain strict local extremes.
            close = std::clamp(close, lo + margin, hi - margin);
        }
        const Candle& prev = series.candles.back();
        Candle c;
        c.timestamp = prev.timestamp + step;
        c.open = prev.close;
        c.close = close;
        c.high = std::max(c.open, c.close);
        c.low = std::min(c.open, c.close);
        c.volume = std::round(base_volume * (0.7 + 0.6 * rng.unit()));
        series.candles.push_back(c);
    }
}

SynthResult synth_series(const SynthSpec& spec, std::uint64_t seed) {
    if (!(spec.start_price > 0.0)) throw ValidationError("synth: start_price must be positive");
    if (!(spec.wave1_length > 0.0)) throw ValidationError("synth: wave1_length must be positive");
    if (spec.noise < 0.0) throw ValidationError("synth: noise must be non-negative");

    const bool impulse = spec.pattern != SynthPattern::Zigzag;
    const std::size_t legs = spec.pattern == SynthPattern::Impulse5 ? 5
                             : spec.pattern == SynthPattern::Impulse4 ? 4
                                                                      : 3;
    std::vector<int> counts = spec.candles_per_wave;
    if (counts.empty()) {
        static constexpr int defaults[] = {8, 5, 10, 6, 10};
        counts.assign(defaults, defaults + legs);
    }
    if (counts.size() != legs) {
        throw ValidationError("synth: candles_per_wave needs one entry per leg");
    }
    for (int c : counts) {
        if (c < 1) throw ValidationError("synth: candles_per_wave entries must be positive");
    }

    // Pivot ladder in signed leg lengths of wave 1 (wave A for zigzags).
    std::vector<double> deltas;
    if (impulse) {
        for (double r : {spec.w2_of_w1, spec.w3_of_w1, spec.w4_of_w3, spec.w5_of_w1}) {
            if (!(r > 0.0)) throw ValidationError("synth: leg ratios must be positive");
        }
        if (!(spec.w2_of_w1 < 1.0)) throw ValidationError("synth: wave 2 would fully retrace wave 1");
        if (!(spec.w3_of_w1 * (1.0 - spec.w4_of_w3) > spec.w2_of_w1)) {
            throw ValidationError("synth: wave 4 would overlap wave 1");
        }
        deltas = {1.0, -spec.w2_of_w1, spec.w3_of_w1, -spec.w3_of_w1 * spec.w4_of_w3, spec.w5_of_w1};
        if (spec.pattern == SynthPattern::Impulse5 && spec.w3_of_w1 < 1.0 &&
            spec.w3_of_w1 < spec.w5_of_w1) {
            throw ValidationError("synth: wave 3 would be the shortest impulse wave");
        }
        deltas.resize(legs);
    } else {
        if (!(spec.b_of_a > 0.0) || !(spec.b_of_a < 1.0)) {
            throw ValidationError("synth: b_of_a must lie in (0, 1)");
        }
        if (!(spec.c_of_a > 0.0)) throw ValidationError("synth: c_of_a must be positive");
        deltas = {1.0, -spec.b_of_a, spec.c_of_a};
    }

    const double sign = spec.direction == Direction::Up ? 1.0 : -1.0;
    std::vector<double> prices{spec.start_price};
    for (std::size_t i = 0; i < legs; ++i) {
        prices.push_back(prices.back() + sign * spec.wave1_length * deltas[i]);
    }
    for (double p : prices) {
        if (!(p > 0.0)) throw ValidationError("synth: pattern prices must stay positive");
    }

    SynthResult out;
    out.series.symbol = spec.symbol;
    out.series.interval = spec.interval;
    Rng rng(seed);
    append_pivot_candle(out.series, spec.start_ts, prices[0], spec.base_volume);
    for (std::size_t i = 0; i < legs; ++i) {
        append_leg(out.series, prices[i + 1], counts[i], spec.noise, spec.base_volume, rng);
    }

    // A pattern travelling up starts from a Low pivot, and vice versa.
    const bool starts_low = spec.direction == Direction::Up;
    std::size_t index = 0;
    out.pivots.push_back(SwingPoint{0, prices[0], starts_low ? SwingKind::Low : SwingKind::High});
    for (std::size_t i = 0; i < legs; ++i) {
        index += std::size_t(counts[i]);
        const bool high = starts_low ? (i % 2 == 0) : (i % 2 == 1);
        out.pivots.push_back(SwingPoint{index, prices[i + 1], high ? SwingKind::High : SwingKind::Low});
    }
    return out;
}

} // namespace elliott
