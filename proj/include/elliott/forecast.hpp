#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "elliott/candle.hpp"
#include "elliott/waves.hpp"

namespace elliott {

enum class Signal { Buy, Sell, Hold };

std::string_view signal_name(Signal s); // "buy" / "sell" / "hold"
std::optional<Signal> signal_from_name(std::string_view name);

enum class HorizonUnit { Candles, Price };

struct ForecastConfig {
    double extension_ratio = 1.618; // wave-3 extension multiple for four-wave targets
    double stop_buffer = 0.382;     // stop distance beyond a five-wave extreme, in wave-5 lengths
    HorizonUnit horizon_unit = HorizonUnit::Candles;

    friend bool operator==(const ForecastConfig&, const ForecastConfig&) = default;
};

struct Forecast {
    std::string symbol;
    Signal signal = Signal::Hold;
    Direction direction = Direction::Up; // predicted move direction
    double entry = 0.0;
    double primary_target = 0.0;
    std::optional<double> secondary_target;
    double stop_loss = 0.0;
    std::size_t issued_at_index = 0;
    std::int64_t issued_at_ts = 0;
    std::size_t horizon_candles = 1;

    friend bool operator==(const Forecast&, const Forecast&) = default;
};

enum class EvalCriterion { Incomplete4Mean, Complete5Symmetry };

// metric holds the mean of the next-horizon closes (Incomplete4Mean) or the
// ratio of the follow-up leg's length to wave 5's (Complete5Symmetry).
struct EvaluationOutcome {
    EvalCriterion criterion = EvalCriterion::Incomplete4Mean;
    bool correct = false;
    double metric = 0.0;
    std::size_t evaluated_at_index = 0;

    friend bool operator==(const EvaluationOutcome&, const EvaluationOutcome&) = default;
};

// Forecast horizon derived from wave 1: round(1.62 * duration) candles, at
// least one. The Price unit instead scales 1.62 * price length by the wave's
// own mean absolute close-to-close change, which needs the series.
std::size_t horizon(const Wave& wave1, HorizonUnit unit = HorizonUnit::Candles,
                    const CandleSeries* series = nullptr);

// Builds the trading call for a pattern:
//  - four-wave: continuation entry at the final pivot's close, target at the
//    wave-3 extreme extended by extension_ratio * wave-1 length, stop at the
//    wave-4 pivot;
//  - five-wave alone: reversal call targeting a move equal to wave 5 measured
//    back from its extreme, stop buffered beyond the extreme;
//  - five-wave plus completed A-B-C: resumption call at the last close,
//    primary target at the impulse extreme, secondary at the B pivot, stop at
//    the C pivot.
// Returns nullopt when the level geometry degenerates (entry not strictly
// between stop and target). Throws ValidationError when the corrective does
// not attach to the impulse's final pivot.
std::optional<Forecast> make_forecast(const ImpulsePattern& pattern,
                                      const std::optional<CorrectivePattern>& corrective,
                                      const CandleSeries& series, const ForecastConfig& config);

// Directional criterion: mean of the `n` closes after `issued_index` strictly
// beyond the close at issue, in the predicted direction. Ties count as
// incorrect. nullopt when fewer than n closes follow.
std::optional<EvaluationOutcome> evaluate_forward_mean(Direction direction, std::size_t issued_index,
                                                       std::size_t n, const CandleSeries& series);

// Same criterion applied to a forecast's direction, issue index and horizon.
std::optional<EvaluationOutcome> evaluate_incomplete(const Forecast& forecast,
                                                     const CandleSeries& series);

// Symmetry criterion for a five-wave impulse: scans forward for the first
// counter-leg confirmed by `threshold`, then checks its length against wave
// 5's within `tolerance` (fractional). Price taking out the impulse extreme
// before confirmation is an incorrect outcome; running out of data yields
// nullopt.
std::optional<EvaluationOutcome> evaluate_complete(const ImpulsePattern& pattern,
                                                   const CandleSeries& series, double tolerance,
                                                   double threshold);

} // namespace elliott
