#include "elliott/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "elliott/errors.hpp"
#include "elliott/forecast.hpp"
#include "elliott/learn.hpp"
#include "elliott/walk.hpp"

namespace elliott {

namespace {

struct KindStats {
    std::size_t n = 0;
    std::size_t excluded = 0;
    std::size_t correct = 0;
    std::size_t held = 0;
    std::size_t kept_correct = 0;
};

std::vector<ResultRow> run_symbol(const std::string& symbol, const ExperimentConfig& exp,
                                  const GlobalConfig& cfg, Fetcher& fetcher) {
    const double threshold = cfg.threshold_for(exp.interval);

    const auto doc = fetcher.fetch(symbol, exp.interval);
    const auto full = parse_candles(doc, exp.interval, symbol);
    const auto train_series = slice(full, exp.train.from_ts, exp.train.to_ts);
    auto eval_series = slice(full, exp.eval.from_ts, exp.eval.to_ts);
    if (eval_series.size() > exp.sample_count) {
        eval_series.candles.resize(exp.sample_count);
    }
    if (eval_series.empty()) throw DataError("no candles in the evaluation range");

    // Learned state is per run and in memory: the durable store never leaks
    // into or out of an experiment.
    KnowledgeStore store;
    if (exp.with_backtesting && !train_series.empty()) {
        for (const auto& rec :
             train_backtester(train_series, cfg.train_setup(exp.interval), cfg.train_params())) {
            store.append(rec);
        }
    }

    std::map<Completeness, KindStats> stats;
    stats[Completeness::Incomplete4];
    stats[Completeness::Complete5];
    for (const auto& occ : scan_patterns(eval_series, threshold, cfg.wave, true, true)) {
        const ImpulsePattern& p = occ.pattern;
        KindStats& ks = stats[p.completeness];
        ++ks.n;

        const std::size_t t0 = p.final_pivot().candle_index;
        std::optional<EvaluationOutcome> verdict;
        if (p.completeness == Completeness::Incomplete4) {
            verdict = evaluate_forward_mean(p.direction, t0, horizon(p.waves.front()), eval_series);
        } else {
            verdict = evaluate_complete(p, eval_series, cfg.symmetry_tolerance, threshold);
        }
        if (!verdict) {
            ++ks.excluded;
            continue;
        }
        if (verdict->correct) ++ks.correct;

        if (exp.with_backtesting) {
            // The prediction itself is directional; only the signal matters
            // for the adjustment, so levels stay unset here.
            Forecast minimal;
            minimal.symbol = symbol;
            minimal.direction = p.completeness == Completeness::Incomplete4 ? p.direction
                                                                            : opposite(p.direction);
            minimal.signal = minimal.direction == Direction::Up ? Signal::Buy : Signal::Sell;
            const auto key = make_state_key(symbol, p, eval_series, cfg.trend_window);
            const auto adjusted = adjust_forecast(minimal, key, store, cfg.min_hit_rate, true);
            if (adjusted.signal == Signal::Hold) {
                ++ks.held;
            } else if (verdict->correct) {
                ++ks.kept_correct;
            }
        }
    }

    std::vector<ResultRow> rows;
    for (const auto kind : {Completeness::Incomplete4, Completeness::Complete5}) {
        const KindStats& ks = stats[kind];
        ResultRow row;
        row.symbol = symbol;
        row.pattern = kind;
        row.n = ks.n;
        row.excluded = ks.excluded;
        const std::size_t scored = ks.n - ks.excluded;
        if (scored > 0) row.accuracy_without = double(ks.correct) / double(scored);
        if (exp.with_backtesting && scored > ks.held) {
            row.accuracy_with = double(ks.kept_correct) / double(scored - ks.held);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string pct(const std::optional<double>& v) {
    if (!v) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", *v * 100.0);
    return buf;
}

std::string pattern_cell(const ResultRow& row) {
    if (!row.pattern) return "error";
    return std::string(completeness_display(*row.pattern));
}

} // namespace

std::vector<ResultRow> run_crossval(const ExperimentConfig& exp, const GlobalConfig& cfg,
                                    Fetcher& fetcher) {
    if (exp.symbols.empty()) throw ConfigError("experiment has no symbols");
    if (exp.train.from_ts > exp.train.to_ts || exp.eval.from_ts > exp.eval.to_ts) {
        throw ConfigError("experiment range is inverted");
    }
    if (exp.train.from_ts <= exp.eval.to_ts && exp.eval.from_ts <= exp.train.to_ts) {
        throw ConfigError("train and eval ranges overlap");
    }
    if (exp.sample_count == 0) throw ConfigError("sample_count must be positive");

    // One task per symbol; results keep the declared symbol order.
    std::vector<std::future<std::vector<ResultRow>>> futures;
    futures.reserve(exp.symbols.size());
    for (const std::string& symbol : exp.symbols) {
        futures.push_back(std::async(std::launch::async, [&, symbol] {
            return run_symbol(symbol, exp, cfg, fetcher);
        }));
    }

    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            for (auto& row : futures[i].get()) rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            ResultRow row;
            row.symbol = exp.symbols[i];
            row.error = e.what();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_results(const std::vector<ResultRow>& rows, ResultFormat format) {
    std::ostringstream out;
    switch (format) {
        case ResultFormat::Csv: {
            out << "symbol,pattern,N,without,with,excluded\n";
            for (const ResultRow& row : rows) {
                out << row.symbol << ',' << pattern_cell(row) << ',' << row.n << ','
                    << pct(row.accuracy_without) << ',' << pct(row.accuracy_with) << ','
                    << row.excluded << '\n';
            }
            break;
        }
        case ResultFormat::Text: {
            char line[160];
            std::snprintf(line, sizeof line, "%-10s %-12s %6s %9s %9s %9s\n", "symbol", "pattern", "N",
                          "without", "with", "excluded");
            out << line;
            for (const ResultRow& row : rows) {
                if (!row.pattern && !row.error.empty()) {
                    std::snprintf(line, sizeof line, "%-10s error: %.120s\n", row.symbol.c_str(),
                                  row.error.c_str());
                    out << line;
                    continue;
                }
                std::snprintf(line, sizeof line, "%-10s %-12s %6zu %9s %9s %9zu\n", row.symbol.c_str(),
                              pattern_cell(row).c_str(), row.n, pct(row.accuracy_without).c_str(),
                              pct(row.accuracy_with).c_str(), row.excluded);
                out << line;
            }
            break;
        }
        case ResultFormat::Markdown: {
            out << "| symbol | pattern | N | without | with | excluded |\n";
            out << "| --- | --- | --- | --- | --- | --- |\n";
            for (const ResultRow& row : rows) {
                out << "| " << row.symbol << " | " << pattern_cell(row) << " | " << row.n << " | "
                    << pct(row.accuracy_without) << " | " << pct(row.accuracy_with) << " | "
                    << row.excluded << " |\n";
            }
            break;
        }
    }
    return out.str();
}

std::filesystem::path write_results(const std::vector<ResultRow>& rows,
                                    const std::filesystem::path& results_dir,
                                    const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(results_dir, ec);
    const auto path = results_dir / (name + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open " + path.string());
    out << format_results(rows, ResultFormat::Csv);
    out.flush();
    if (!out) throw StoreError("write failed for " + path.string());
    return path;
}

} // namespace elliott
