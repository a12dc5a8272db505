#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elliott/candle.hpp"
#include "elliott/forecast.hpp"
#include "elliott/learn.hpp"
#include "elliott/waves.hpp"

namespace elliott {

struct TimeRange {
    std::int64_t from_ts = 0;
    std::int64_t to_ts = 0;

    friend bool operator==(const TimeRange&, const TimeRange&) = default;
};

// Cross-validation experiment: disjoint train/eval ranges over a symbol set.
struct ExperimentConfig {
    std::string name = "experiment";
    std::vector<std::string> symbols;
    Interval interval = Interval::Daily;
    TimeRange train;
    TimeRange eval;
    std::size_t sample_count = 1000; // eval candles taken per symbol
    bool with_backtesting = true;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct GlobalConfig {
    std::uint64_t seed = 42;
    std::filesystem::path data_dir = "data";
    std::filesystem::path store_dir = "kb";
    std::filesystem::path runs_dir = "runs";
    std::filesystem::path results_dir = "results";

    double daily_threshold = 0.02;
    double hourly_threshold = 0.005;
    double symmetry_tolerance = 0.10;
    int trend_window = 20;
    double min_hit_rate = 0.5;

    WaveConfig wave;
    ForecastConfig forecast;
    TrainParams train; // train.seed is filled from `seed` at call sites

    std::optional<ExperimentConfig> experiment;

    double threshold_for(Interval interval) const {
        return interval == Interval::Daily ? daily_threshold : hourly_threshold;
    }
    TrainSetup train_setup(Interval interval) const {
        return TrainSetup{threshold_for(interval), wave, symmetry_tolerance, trend_window};
    }
    TrainParams train_params() const {
        TrainParams p = train;
        p.seed = seed;
        return p;
    }

    friend bool operator==(const GlobalConfig&, const GlobalConfig&) = default;
};

// INI-style document: `key=value` lines, `#` comments, and the sections
// [daily], [hourly], [experiment]. Unknown keys or malformed values raise
// ConfigError naming the line. Defaults apply to omitted keys.
GlobalConfig parse_config(std::string_view text);

// Canonical form; parse_config(serialize_config(c)) == c. Experiment ranges
// are date-granular (00:00 UTC).
std::string serialize_config(const GlobalConfig& config);

GlobalConfig load_config(const std::filesystem::path& path); // ConfigError when unreadable

} // namespace elliott
