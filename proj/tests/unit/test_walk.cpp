#include <doctest.h>

#include <set>
#include <tuple>

#include "elliott/market_data.hpp"
#include "elliott/walk.hpp"
#include "support/oracles.hpp"

using namespace elliott;

TEST_SUITE_BEGIN("walk");

TEST_CASE("walk-forward occurrences on the regime fixture") {
    FileFetcher fetcher("fixtures");
    const CandleSeries series = load_series(fetcher, "RRA", Interval::Daily,
                                            parse_iso_date("2015-01-01"),
                                            parse_iso_date("2020-06-22") + 86399);
    const WaveConfig config;
    const auto occurrences = scan_patterns(series, 0.02, config, true, true);
    REQUIRE_FALSE(occurrences.empty());

    std::set<std::tuple<int, std::size_t, std::size_t>> seen;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        const PatternOccurrence& occ = occurrences[i];
        const ImpulsePattern& p = occ.pattern;

        // confirmation follows the final pivot, never precedes it
        CHECK(occ.detected_at >= p.final_pivot().candle_index);
        CHECK(occ.detected_at < series.size());
        if (i > 0) {
            const PatternOccurrence& prev = occurrences[i - 1];
            CHECK(occ.detected_at >= prev.detected_at);
            // at one pivot the five-wave window outranks the four-wave one
            if (occ.detected_at == prev.detected_at &&
                occ.pattern.final_pivot() == prev.pattern.final_pivot()) {
                CHECK_FALSE((prev.pattern.completeness == Completeness::Incomplete4 &&
                             p.completeness == Completeness::Complete5));
            }
        }

        // each window is counted exactly once
        std::vector<SwingPoint> window;
        window.push_back(p.waves.front().start);
        for (const Wave& w : p.waves) window.push_back(w.end);
        CHECK(testsupport::oracle_impulse_ok(window.data(), window.size(),
                                             config.require_w3_dominance));
        const auto id = std::make_tuple(int(p.completeness), p.start().candle_index,
                                        p.final_pivot().candle_index);
        CHECK(seen.insert(id).second);
    }

    SUBCASE("kind flags filter the output") {
        const auto fours = scan_patterns(series, 0.02, config, true, false);
        const auto fives = scan_patterns(series, 0.02, config, false, true);
        CHECK(fours.size() + fives.size() == occurrences.size());
        for (const auto& occ : fours) CHECK(occ.pattern.completeness == Completeness::Incomplete4);
        for (const auto& occ : fives) CHECK(occ.pattern.completeness == Completeness::Complete5);
        CHECK(scan_patterns(series, 0.02, config, false, false).empty());
    }

    SUBCASE("occurrences never use data beyond their detection point") {
        for (std::size_t i = 0; i < std::min<std::size_t>(occurrences.size(), 4); ++i) {
            const PatternOccurrence& occ = occurrences[i];
            CandleSeries prefix = series;
            prefix.candles.resize(occ.detected_at + 1);
            const auto replay = scan_patterns(prefix, 0.02, config, true, true);
            bool found = false;
            for (const auto& r : replay) {
                if (r.pattern == occ.pattern && r.detected_at == occ.detected_at) found = true;
            }
            CHECK(found);
        }
    }
}

TEST_SUITE_END();
