#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "elliott/swings.hpp"

namespace elliott {

enum class Direction { Up, Down };

constexpr Direction opposite(Direction d) {
    return d == Direction::Up ? Direction::Down : Direction::Up;
}

std::string_view direction_name(Direction d);           // "up" / "down"
std::optional<Direction> direction_from_name(std::string_view name);

enum class WaveLabel { W1, W2, W3, W4, W5, WA, WB, WC };

std::string_view wave_label_name(WaveLabel label); // "1".."5", "A".."C"

// One leg of a pattern, spanning two consecutive pivots.
struct Wave {
    WaveLabel label = WaveLabel::W1;
    SwingPoint start;
    SwingPoint end;

    double price_length() const { return end.price > start.price ? end.price - start.price
                                                                 : start.price - end.price; }
    std::size_t duration() const { return end.candle_index - start.candle_index; }

    friend bool operator==(const Wave&, const Wave&) = default;
};

enum class Completeness { Incomplete4, Complete5 };

std::string_view completeness_code(Completeness c);           // "impulse4" / "impulse5"
std::optional<Completeness> completeness_from_code(std::string_view code);
std::string_view completeness_display(Completeness c);        // "1-2-3-4" / "1-2-3-4-5"

// Hard-rule outcomes for an impulse window. Emitted patterns always pass;
// rules that do not apply to the window's completeness are reported true.
struct RuleReport {
    bool rule2_no_full_retrace = false; // wave 2 keeps above/below wave 1's origin
    bool rule4_no_overlap = false;      // wave 4 stays out of wave 1 price territory
    bool rule3_not_shortest = false;    // wave 3 never the strictly shortest (five-wave only)
    bool w3_dominance = false;          // wave 3 longer than wave 1 (four-wave only, config-gated)

    bool all() const {
        return rule2_no_full_retrace && rule4_no_overlap && rule3_not_shortest && w3_dominance;
    }

    friend bool operator==(const RuleReport&, const RuleReport&) = default;
};

// Fibonacci ratio profile of a pattern. For impulses the slots hold
// w2/w1, w3/w1, w4/w3 and (five-wave) w5/w1; for correctives the first two
// slots hold B/A and C/A. Absent legs leave slots empty.
struct FibAssessment {
    std::optional<double> ratio_w2_w1;
    std::optional<double> ratio_w3_w1;
    std::optional<double> ratio_w4_w3;
    std::optional<double> ratio_w5_w1;
    double conformance_score = 0.0; // mean per-ratio proximity, in [0, 1]

    friend bool operator==(const FibAssessment&, const FibAssessment&) = default;
};

struct ImpulsePattern {
    Direction direction = Direction::Up;
    Completeness completeness = Completeness::Incomplete4;
    std::vector<Wave> waves; // 4 or 5 legs, W1..
    FibAssessment fib;
    RuleReport rules;

    const SwingPoint& start() const { return waves.front().start; }
    const SwingPoint& final_pivot() const { return waves.back().end; }

    friend bool operator==(const ImpulsePattern&, const ImpulsePattern&) = default;
};

struct CorrectivePattern {
    Direction direction = Direction::Down; // direction the correction travels
    std::vector<Wave> waves;               // WA, WB, WC
    FibAssessment fib;

    const SwingPoint& start() const { return waves.front().start; }
    const SwingPoint& final_pivot() const { return waves.back().end; }

    friend bool operator==(const CorrectivePattern&, const CorrectivePattern&) = default;
};

struct WaveConfig {
    double fib_tolerance = 0.10;      // proximity window around canonical ratios
    bool require_w3_dominance = true; // four-wave windows need w3 longer than w1
    std::vector<double> canonical_ratios = {0.382, 0.5, 0.618, 1.0, 1.618, 2.618};

    friend bool operator==(const WaveConfig&, const WaveConfig&) = default;
};

// Retracement level measured down from `high`: high - ratio * (high - low).
// Requires high > low and ratio >= 0; throws ValidationError otherwise.
double fib_level(double high, double low, double ratio);

// Proximity of one ratio to the nearest canonical value:
// max(0, 1 - |ratio - nearest| / tolerance).
double ratio_score(double ratio, const std::vector<double>& canonical, double tolerance);

// Ratio profile for a pattern's legs. Dispatches on the first wave's label:
// W-labels use the impulse mapping, A/B/C the corrective one.
FibAssessment assess_fibonacci(const std::vector<Wave>& waves, const WaveConfig& config);

// Enumerates pivot windows (5 pivots for four-wave, 6 for five-wave) passing
// every hard rule. Results are ordered by start pivot; each start yields at
// most one pattern. The sequence must alternate; throws ValidationError if not.
std::vector<ImpulsePattern> find_impulse(const SwingSequence& swings, Completeness completeness,
                                         const WaveConfig& config);

// Enumerates A-B-C zigzags (4-pivot windows where B stays short of A's origin
// and C travels beyond A's end). With `preceding`, only the window starting at
// the impulse's final pivot and running against its direction qualifies.
std::vector<CorrectivePattern> find_corrective(const SwingSequence& swings,
                                               const std::optional<ImpulsePattern>& preceding,
                                               const WaveConfig& config);

} // namespace elliott
