#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elliott/candle.hpp"
#include "elliott/forecast.hpp"
#include "elliott/waves.hpp"

namespace elliott {

enum class Action : int { Long = 0, Short = 1, Flat = 2 };
inline constexpr std::size_t kActionCount = 3;

std::string_view action_name(Action a); // "long" / "short" / "flat"
std::optional<Action> action_from_name(std::string_view name);

enum class TrendBucket : int { Below = 0, Above = 1 };

// Discretized market state a pattern occurrence falls into.
struct StateKey {
    std::string symbol;
    Completeness kind = Completeness::Incomplete4;
    Direction direction = Direction::Up;
    int fib_bucket = 0;                      // conformance score bucket, 0..4
    TrendBucket trend = TrendBucket::Above;  // close vs trailing mean at the final pivot

    auto operator<=>(const StateKey&) const = default;
};

struct QCell {
    std::array<double, kActionCount> q{};
    std::array<std::int64_t, kActionCount> visits{};

    friend bool operator==(const QCell&, const QCell&) = default;
};

struct QTable {
    std::map<StateKey, QCell> cells;

    friend bool operator==(const QTable&, const QTable&) = default;
};

struct TrainParams {
    double alpha = 0.1;
    double gamma = 0.5;
    double epsilon = 0.1;
    int episodes = 1;
    std::uint64_t seed = 42;

    friend bool operator==(const TrainParams&, const TrainParams&) = default;
};

// Everything train_backtester needs besides the series and learning rates.
struct TrainSetup {
    double swing_threshold = 0.02;
    WaveConfig wave;
    double symmetry_tolerance = 0.10;
    int trend_window = 20;

    friend bool operator==(const TrainSetup&, const TrainSetup&) = default;
};

// Durable per-state statistics, one JSONL line per append.
struct KnowledgeRecord {
    StateKey key;
    Interval interval = Interval::Daily; // informational; keys match across intervals
    std::int64_t samples = 0;
    double hit_rate = 0.0;
    double mean_forward_return = 0.0; // log return over the forecast horizon
    std::array<double, kActionCount> q_values{};
    std::int64_t trained_through = 0; // timestamp of the last candle seen
    int schema_version = 1;

    friend bool operator==(const KnowledgeRecord&, const KnowledgeRecord&) = default;
};

// One temporal-difference step: Q(s,a) += alpha * (r + gamma * max_a' Q(s',a')
// - Q(s,a)). Pure; the visit counter for (s,a) increments. A missing next
// state (terminal) contributes zero future value.
QTable q_update(QTable table, const StateKey& state, Action action, double reward,
                const std::optional<StateKey>& next_state, const TrainParams& params);

// Discretizes a pattern occurrence. fib_bucket = floor(conformance * 5)
// clamped to [0, 4]; trend compares the final pivot candle's close to the
// trailing `trend_window` close mean (ties bucket Above).
StateKey make_state_key(const std::string& symbol, const ImpulsePattern& pattern,
                        const CandleSeries& series, int trend_window);

// Walk-forward training pass: detects pattern occurrences, replays them in
// detection order under an epsilon-greedy policy, and aggregates per-state
// outcome statistics. Occurrences whose evaluation verdict or forward
// horizon falls off the series end are excluded. Deterministic for fixed
// inputs and seed. Returns one record per visited state, key-ordered.
std::vector<KnowledgeRecord> train_backtester(const CandleSeries& series, const TrainSetup& setup,
                                              const TrainParams& params);

// Append-only JSONL store, one file per symbol (<dir>/<SYMBOL>.jsonl). The
// default constructor keeps records in memory instead, with the same
// semantics. Re-reading applies newest-wins per state key; lines that fail to
// parse are skipped and counted, never fatal.
class KnowledgeStore {
public:
    KnowledgeStore();
    explicit KnowledgeStore(std::filesystem::path dir);

    // Throws StoreError when the line cannot be written whole.
    void append(const KnowledgeRecord& record);

    std::optional<KnowledgeRecord> lookup(const StateKey& key) const;

    // Latest record per key for one symbol, key-ordered.
    std::vector<KnowledgeRecord> records_for(const std::string& symbol) const;

    std::size_t skipped_lines() const;

private:
    std::vector<KnowledgeRecord> read_symbol(const std::string& symbol) const;

    std::optional<std::filesystem::path> dir_;
    mutable std::mutex mutex_;
    std::vector<KnowledgeRecord> memory_;
    mutable std::size_t skipped_ = 0;
};

// Applies stored experience to a fresh forecast. Missing record: unchanged.
// hit_rate below min_hit_rate downgrades the signal to Hold. When the
// forecast is issued at the pattern's final pivot (horizon_aligned), a Q
// argmax directly contradicting the signal (Short vs Buy, Long vs Sell; a
// flat or tied table has no opinion) also downgrades; a forecast issued
// later covers a different window than the stored action values, so the
// argmax veto does not apply to it. Never strengthens.
Forecast adjust_forecast(const Forecast& forecast, const StateKey& key, const KnowledgeStore& store,
                         double min_hit_rate, bool horizon_aligned);

} // namespace elliott
