#include "elliott/walk.hpp"

#include "elliott/errors.hpp"
#include "elliott/swings.hpp"

namespace elliott {

std::vector<PatternOccurrence> scan_patterns(const CandleSeries& series, double threshold,
                                             const WaveConfig& config, bool four_wave,
                                             bool five_wave) {
    if (series.empty()) throw ValidationError("scan_patterns: empty series");
    std::vector<PatternOccurrence> out;
    SwingDetector detector(threshold);
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!detector.push(series.at(i))) continue;
        const SwingSequence& pivots = detector.confirmed();
        const auto try_window = [&](std::size_t window, Completeness completeness) {
            if (pivots.size() < window) return;
            const SwingSequence tail(pivots.end() - std::ptrdiff_t(window), pivots.end());
            for (auto& pattern : find_impulse(tail, completeness, config)) {
                out.push_back(PatternOccurrence{std::move(pattern), i});
            }
        };
        if (five_wave) try_window(6, Completeness::Complete5);
        if (four_wave) try_window(5, Completeness::Incomplete4);
    }
    return out;
}

} // namespace elliott
