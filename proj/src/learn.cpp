#include "elliott/learn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "elliott/errors.hpp"
#include "elliott/json_io.hpp"
#include "elliott/rng.hpp"
#include "elliott/walk.hpp"

namespace elliott {

std::string_view action_name(Action a) {
    switch (a) {
        case Action::Long: return "long";
        case Action::Short: return "short";
        case Action::Flat: return "flat";
    }
    return "?";
}

std::optional<Action> action_from_name(std::string_view name) {
    if (name == "long") return Action::Long;
    if (name == "short") return Action::Short;
    if (name == "flat") return Action::Flat;
    return std::nullopt;
}

namespace {

std::size_t argmax_action(const std::array<double, kActionCount>& q) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < kActionCount; ++i) {
        if (q[i] > q[best]) best = i;
    }
    return best;
}

bool all_equal(const std::array<double, kActionCount>& q) {
    return q[0] == q[1] && q[1] == q[2];
}

void td_step(QTable& table, const StateKey& state, Action action, double reward,
             const std::optional<StateKey>& next_state, const TrainParams& params) {
    double max_next = 0.0;
    if (next_state) {
        const auto it = table.cells.find(*next_state);
        if (it != table.cells.end()) {
            max_next = *std::max_element(it->second.q.begin(), it->second.q.end());
        }
    }
    QCell& cell = table.cells[state];
    double& q = cell.q[std::size_t(action)];
    q += params.alpha * (reward + params.gamma * max_next - q);
    ++cell.visits[std::size_t(action)];
}

} // namespace

QTable q_update(QTable table, const StateKey& state, Action action, double reward,
                const std::optional<StateKey>& next_state, const TrainParams& params) {
    td_step(table, state, action, reward, next_state, params);
    return table;
}

StateKey make_state_key(const std::string& symbol, const ImpulsePattern& pattern,
                        const CandleSeries& series, int trend_window) {
    if (trend_window < 1) throw ValidationError("make_state_key: trend window must be positive");
    const std::size_t t = pattern.final_pivot().candle_index;
    if (t >= series.size()) throw ValidationError("make_state_key: pattern extends past the series");

    StateKey key;
    key.symbol = symbol;
    key.kind = pattern.completeness;
    key.direction = pattern.direction;
    key.fib_bucket = std::clamp(int(std::floor(pattern.fib.conformance_score * 5.0)), 0, 4);

    const std::size_t first = t + 1 >= std::size_t(trend_window) ? t + 1 - std::size_t(trend_window) : 0;
    double sum = 0.0;
    for (std::size_t i = first; i <= t; ++i) sum += series.at(i).close;
    const double mean = sum / double(t - first + 1);
    key.trend = series.at(t).close >= mean ? TrendBucket::Above : TrendBucket::Below;
    return key;
}

namespace {

// One pattern occurrence ready for replay: state, outcome and horizon return.
struct Episode {
    StateKey key;
    bool correct = false;
    double fwd_return = 0.0; // log return over the horizon from the final pivot
};

std::vector<Episode> collect_episodes(const CandleSeries& series, const TrainSetup& setup) {
    std::vector<Episode> episodes;
    const auto occurrences =
        scan_patterns(series, setup.swing_threshold, setup.wave, true, true);
    for (const auto& occ : occurrences) {
        const ImpulsePattern& p = occ.pattern;
        const std::size_t t0 = p.final_pivot().candle_index;
        const std::size_t n = horizon(p.waves.front());
        if (t0 + n >= series.size()) continue;

        std::optional<EvaluationOutcome> verdict;
        if (p.completeness == Completeness::Incomplete4) {
            verdict = evaluate_forward_mean(p.direction, t0, n, series);
        } else {
            verdict = evaluate_complete(p, series, setup.symmetry_tolerance, setup.swing_threshold);
        }
        if (!verdict) continue;

        Episode ep;
        ep.key = make_state_key(series.symbol, p, series, setup.trend_window);
        ep.correct = verdict->correct;
        ep.fwd_return = std::log(series.at(t0 + n).close / series.at(t0).close);
        episodes.push_back(std::move(ep));
    }
    return episodes;
}

} // namespace

std::vector<KnowledgeRecord> train_backtester(const CandleSeries& series, const TrainSetup& setup,
                                              const TrainParams& params) {
    if (series.empty()) throw ValidationError("train_backtester: empty series");
    if (params.episodes < 1) throw ValidationError("train_backtester: episodes must be positive");

    const auto episodes = collect_episodes(series, setup);

    struct Stats {
        std::int64_t samples = 0;
        std::int64_t hits = 0;
        double return_sum = 0.0;
    };
    std::map<StateKey, Stats> stats;
    for (const Episode& ep : episodes) {
        Stats& s = stats[ep.key];
        ++s.samples;
        if (ep.correct) ++s.hits;
        s.return_sum += ep.fwd_return;
    }

    QTable table;
    Rng rng(params.seed);
    for (int ep = 0; ep < params.episodes; ++ep) {
        for (std::size_t t = 0; t < episodes.size(); ++t) {
            const Episode& e = episodes[t];
            Action action;
            if (rng.unit() < params.epsilon) {
                action = Action(rng.index(kActionCount));
            } else {
                action = Action(argmax_action(table.cells[e.key].q));
            }
            double reward = 0.0;
            if (action == Action::Long) reward = e.fwd_return;
            if (action == Action::Short) reward = -e.fwd_return;
            std::optional<StateKey> next;
            if (t + 1 < episodes.size()) next = episodes[t + 1].key;
            td_step(table, e.key, action, reward, next, params);
        }
    }

    std::vector<KnowledgeRecord> records;
    records.reserve(stats.size());
    for (const auto& [key, s] : stats) {
        KnowledgeRecord rec;
        rec.key = key;
        rec.interval = series.interval;
        rec.samples = s.samples;
        rec.hit_rate = double(s.hits) / double(s.samples);
        rec.mean_forward_return = s.return_sum / double(s.samples);
        rec.q_values = table.cells[key].q;
        rec.trained_through = series.candles.back().timestamp;
        rec.schema_version = 1;
        records.push_back(std::move(rec));
    }
    return records;
}

KnowledgeStore::KnowledgeStore() = default;

KnowledgeStore::KnowledgeStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

void KnowledgeStore::append(const KnowledgeRecord& record) {
    const std::lock_guard<std::mutex> lock(mutex_);
    if (!dir_) {
        memory_.push_back(record);
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    const auto path = *dir_ / (record.key.symbol + ".jsonl");
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw StoreError("cannot open " + path.string());
    out << to_json(record).dump() << '\n';
    out.flush();
    if (!out) throw StoreError("write failed for " + path.string());
}

std::vector<KnowledgeRecord> KnowledgeStore::read_symbol(const std::string& symbol) const {
    std::vector<KnowledgeRecord> raw;
    if (!dir_) {
        for (const auto& rec : memory_) {
            if (rec.key.symbol == symbol) raw.push_back(rec);
        }
        return raw;
    }
    const auto path = *dir_ / (symbol + ".jsonl");
    std::ifstream in(path, std::ios::binary);
    if (!in) return raw; // an absent file is an empty store
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            KnowledgeRecord rec;
            from_json(nlohmann::json::parse(line), rec);
            raw.push_back(std::move(rec));
        } catch (const std::exception& e) {
            ++skipped_;
            std::cerr << "knowledge store: skipping " << path.string() << ":" << line_no << " ("
                      << e.what() << ")\n";
        }
    }
    return raw;
}

std::vector<KnowledgeRecord> KnowledgeStore::records_for(const std::string& symbol) const {
    const std::lock_guard<std::mutex> lock(mutex_);
    std::map<StateKey, KnowledgeRecord> latest;
    for (auto& rec : read_symbol(symbol)) latest[rec.key] = std::move(rec); // newest wins
    std::vector<KnowledgeRecord> out;
    out.reserve(latest.size());
    for (auto& [key, rec] : latest) out.push_back(std::move(rec));
    return out;
}

std::optional<KnowledgeRecord> KnowledgeStore::lookup(const StateKey& key) const {
    for (auto& rec : records_for(key.symbol)) {
        if (rec.key == key) return rec;
    }
    return std::nullopt;
}

std::size_t KnowledgeStore::skipped_lines() const {
    const std::lock_guard<std::mutex> lock(mutex_);
    return skipped_;
}

Forecast adjust_forecast(const Forecast& forecast, const StateKey& key, const KnowledgeStore& store,
                         double min_hit_rate, bool horizon_aligned) {
    if (forecast.signal == Signal::Hold) return forecast;
    const auto rec = store.lookup(key);
    if (!rec) return forecast;

    Forecast out = forecast;
    if (rec->samples > 0 && rec->hit_rate < min_hit_rate) {
        out.signal = Signal::Hold;
        return out;
    }
    // Stored action values measure drift from the pattern's final pivot. A
    // forecast issued elsewhere (the post-correction resumption case) covers
    // a different window, so only the hit-rate gate applies to it.
    if (horizon_aligned && !all_equal(rec->q_values)) {
        const Action best = Action(argmax_action(rec->q_values));
        const bool contradicts = (forecast.signal == Signal::Buy && best == Action::Short) ||
                                 (forecast.signal == Signal::Sell && best == Action::Long);
        if (contradicts) out.signal = Signal::Hold;
    }
    return out;
}

} // namespace elliott
