#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "elliott/candle.hpp"

namespace elliott {

enum class SwingKind { Low, High };

struct SwingPoint {
    std::size_t candle_index = 0;
    double price = 0.0;
    SwingKind kind = SwingKind::Low;

    friend bool operator==(const SwingPoint&, const SwingPoint&) = default;
};

// Alternating High/Low pivots ordered by candle index.
using SwingSequence = std::vector<SwingPoint>;

// Incremental zigzag detector. A High pivot is confirmed once price falls by
// `threshold` (fractional) from the running maximum; a Low pivot once price
// rises by `threshold` from the running minimum. Pivots are reported at the
// extreme candle, not at the confirming candle, so confirmation lags the
// pivot itself.
class SwingDetector {
public:
    explicit SwingDetector(double threshold);

    // Feeds the next candle; returns true when a pivot was confirmed by it.
    bool push(const Candle& candle);

    const SwingSequence& confirmed() const { return confirmed_; }

    // Confirmed pivots plus provisional endpoints: the pre-first-pivot origin
    // extreme and the trailing extreme since the last pivot. This is what
    // detect_swings returns.
    SwingSequence sequence() const;

private:
    enum class Trend { None, Up, Down };

    void confirm(SwingPoint pivot, std::size_t at_index, double opposite_extreme);

    double threshold_;
    std::size_t count_ = 0;
    Trend trend_ = Trend::None;
    std::optional<SwingPoint> run_high_; // None state: running extremes
    std::optional<SwingPoint> run_low_;
    bool run_bar_rising_ = true; // direction of the bar holding both extremes
    std::optional<SwingPoint> candidate_; // Up/Down state: pivot-in-progress
    SwingSequence confirmed_;
};

// Runs the detector over a whole series. Throws ValidationError on an empty
// series or a threshold outside (0, 1).
SwingSequence detect_swings(const CandleSeries& series, double threshold);

} // namespace elliott
