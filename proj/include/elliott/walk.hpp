#pragma once

#include <vector>

#include "elliott/candle.hpp"
#include "elliott/waves.hpp"

namespace elliott {

struct PatternOccurrence {
    ImpulsePattern pattern;
    std::size_t detected_at = 0; // index of the candle that confirmed the final pivot

    friend bool operator==(const PatternOccurrence&, const PatternOccurrence&) = default;
};

// Walk-forward enumeration: candles stream through a SwingDetector and each
// newly confirmed pivot is tried as the final pivot of the windows ending at
// it. A pattern is therefore counted exactly once, at confirmation time, and
// never uses data beyond `detected_at`. Occurrences come back in detection
// order; ties at one pivot order the five-wave window (earlier start) first.
std::vector<PatternOccurrence> scan_patterns(const CandleSeries& series, double threshold,
                                             const WaveConfig& config, bool four_wave,
                                             bool five_wave);

} // namespace elliott
