#include "elliott/forecast.hpp"

#include <cmath>

#include "elliott/errors.hpp"

namespace elliott {

std::string_view signal_name(Signal s) {
    switch (s) {
        case Signal::Buy: return "buy";
        case Signal::Sell: return "sell";
        case Signal::Hold: return "hold";
    }
    return "?";
}

std::optional<Signal> signal_from_name(std::string_view name) {
    if (name == "buy") return Signal::Buy;
    if (name == "sell") return Signal::Sell;
    if (name == "hold") return Signal::Hold;
    return std::nullopt;
}

std::size_t horizon(const Wave& wave1, HorizonUnit unit, const CandleSeries* series) {
    constexpr double kFactor = 1.62;
    if (unit == HorizonUnit::Candles) {
        const auto n = std::llround(kFactor * double(wave1.duration()));
        return std::size_t(std::max<long long>(1, n));
    }
    // Price unit: candles needed to travel 1.62 * wave-1 length at the wave's
    // own mean absolute close-to-close speed.
    if (series == nullptr) throw ValidationError("horizon: price unit needs the series");
    const std::size_t a = wave1.start.candle_index;
    const std::size_t b = wave1.end.candle_index;
    if (b >= series->size() || a >= b) throw ValidationError("horizon: wave outside series");
    double travel = 0.0;
    for (std::size_t i = a + 1; i <= b; ++i) {
        travel += std::abs(series->at(i).close - series->at(i - 1).close);
    }
    const double speed = travel / double(b - a);
    if (!(speed > 0.0)) return 1;
    const auto n = std::llround(kFactor * wave1.price_length() / speed);
    return std::size_t(std::max<long long>(1, n));
}

namespace {

std::optional<Forecast> finish(Forecast f) {
    // A stop level exactly at the entry (pivot candle closing on its extreme)
    // is nudged one ulp to keep the ordering strict. Any other degenerate
    // geometry (entry not strictly between stop and target) yields no
    // forecast rather than an unusable one.
    if (f.stop_loss == f.entry) {
        f.stop_loss = f.direction == Direction::Up ? std::nextafter(f.entry, 0.0)
                                                   : std::nextafter(f.entry, f.entry * 2.0);
    }
    if (f.direction == Direction::Up) {
        if (!(f.stop_loss < f.entry && f.entry < f.primary_target)) return std::nullopt;
    } else {
        if (!(f.primary_target < f.entry && f.entry < f.stop_loss)) return std::nullopt;
    }
    return f;
}

} // namespace

std::optional<Forecast> make_forecast(const ImpulsePattern& pattern,
                                      const std::optional<CorrectivePattern>& corrective,
                                      const CandleSeries& series, const ForecastConfig& config) {
    const SwingPoint& fp = pattern.final_pivot();
    if (fp.candle_index >= series.size()) {
        throw ValidationError("make_forecast: pattern extends past the series");
    }
    if (corrective) {
        if (pattern.completeness != Completeness::Complete5) {
            throw ValidationError("make_forecast: corrective requires a five-wave impulse");
        }
        if (corrective->start() != fp || corrective->direction != opposite(pattern.direction)) {
            throw ValidationError("make_forecast: corrective does not attach to the impulse");
        }
        if (corrective->final_pivot().candle_index >= series.size()) {
            throw ValidationError("make_forecast: corrective extends past the series");
        }
    }

    Forecast f;
    f.symbol = series.symbol;
    const bool up = pattern.direction == Direction::Up;
    const Wave& w1 = pattern.waves.front();

    if (pattern.completeness == Completeness::Incomplete4) {
        // Continuation into wave 5.
        f.direction = pattern.direction;
        f.issued_at_index = fp.candle_index;
        f.entry = series.at(f.issued_at_index).close;
        const double len1 = w1.price_length();
        const double w3_extreme = pattern.waves[2].end.price;
        f.primary_target = up ? w3_extreme + config.extension_ratio * len1
                              : w3_extreme - config.extension_ratio * len1;
        f.stop_loss = fp.price;
    } else if (corrective) {
        // Completed correction: call the resumption of the impulse direction.
        f.direction = pattern.direction;
        f.issued_at_index = series.size() - 1;
        f.entry = series.candles.back().close;
        f.primary_target = fp.price;
        f.secondary_target = corrective->waves[1].end.price;
        f.stop_loss = corrective->final_pivot().price;
    } else {
        // Exhausted impulse: call the reversal.
        f.direction = opposite(pattern.direction);
        f.issued_at_index = fp.candle_index;
        f.entry = series.at(f.issued_at_index).close;
        const Wave& w5 = pattern.waves[4];
        const double len5 = w5.price_length();
        f.primary_target = w5.start.price;
        f.stop_loss = up ? fp.price + config.stop_buffer * len5 : fp.price - config.stop_buffer * len5;
    }

    f.signal = f.direction == Direction::Up ? Signal::Buy : Signal::Sell;
    f.issued_at_ts = series.at(f.issued_at_index).timestamp;
    f.horizon_candles = horizon(w1, config.horizon_unit, &series);
    return finish(std::move(f));
}

std::optional<EvaluationOutcome> evaluate_forward_mean(Direction direction, std::size_t issued_index,
                                                       std::size_t n, const CandleSeries& series) {
    if (n == 0) throw ValidationError("evaluate_forward_mean: zero horizon");
    if (issued_index >= series.size()) {
        throw ValidationError("evaluate_forward_mean: issue index outside series");
    }
    if (issued_index + n >= series.size()) return std::nullopt;
    const double base = series.at(issued_index).close;
    double sum = 0.0;
    for (std::size_t i = issued_index + 1; i <= issued_index + n; ++i) sum += series.at(i).close;
    const double mean = sum / double(n);
    EvaluationOutcome out;
    out.criterion = EvalCriterion::Incomplete4Mean;
    out.metric = mean;
    out.correct = direction == Direction::Up ? mean > base : mean < base;
    out.evaluated_at_index = issued_index + n;
    return out;
}

std::optional<EvaluationOutcome> evaluate_incomplete(const Forecast& forecast,
                                                     const CandleSeries& series) {
    return evaluate_forward_mean(forecast.direction, forecast.issued_at_index,
                                 forecast.horizon_candles, series);
}

std::optional<EvaluationOutcome> evaluate_complete(const ImpulsePattern& pattern,
                                                   const CandleSeries& series, double tolerance,
                                                   double threshold) {
    if (pattern.completeness != Completeness::Complete5) {
        throw ValidationError("evaluate_complete: needs a five-wave impulse");
    }
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw ValidationError("evaluate_complete: threshold must lie in (0, 1)");
    }
    const SwingPoint& fp = pattern.final_pivot();
    if (fp.candle_index >= series.size()) {
        throw ValidationError("evaluate_complete: pattern extends past the series");
    }
    const bool up = pattern.direction == Direction::Up;
    const double extreme = fp.price;
    const double len5 = pattern.waves[4].price_length();

    // Walk forward tracking the counter-move's extreme until a reversal of
    // `threshold` confirms the follow-up leg. Taking out the impulse extreme
    // first settles the outcome as incorrect. As in swing detection, a bar
    // never confirms against its own extreme: the counter-move's extreme is
    // assumed to print first within its bar, so confirmation needs a later
    // bar.
    std::optional<double> cand;
    std::size_t cand_index = 0;
    for (std::size_t i = fp.candle_index + 1; i < series.size(); ++i) {
        const Candle& c = series.at(i);
        EvaluationOutcome out;
        out.criterion = EvalCriterion::Complete5Symmetry;
        out.evaluated_at_index = i;
        if (up) {
            if (!cand || c.low < *cand) {
                cand = c.low;
                cand_index = i;
            }
            if (cand_index < i && c.high >= *cand * (1.0 + threshold)) {
                out.metric = (extreme - *cand) / len5;
                out.correct = std::abs(out.metric - 1.0) <= tolerance;
                return out;
            }
            if (c.high > extreme) {
                out.metric = (extreme - *cand) / len5;
                out.correct = false;
                return out;
            }
        } else {
            if (!cand || c.high > *cand) {
                cand = c.high;
                cand_index = i;
            }
            if (cand_index < i && c.low <= *cand * (1.0 - threshold)) {
                out.metric = (*cand - extreme) / len5;
                out.correct = std::abs(out.metric - 1.0) <= tolerance;
                return out;
            }
            if (c.low < extreme) {
                out.metric = (*cand - extreme) / len5;
                out.correct = false;
                return out;
            }
        }
    }
    return std::nullopt;
}

} // namespace elliott
