#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "elliott/config.hpp"
#include "elliott/market_data.hpp"

namespace elliott {

// One line of the accuracy comparison: a symbol and pattern kind with sample
// count, accuracy without and with the learned adjustment, and the number of
// occurrences excluded for lack of forward data. Accuracies are fractions;
// nullopt marks an empty denominator (rendered n/a). A load failure leaves
// `error` set and the numeric fields empty.
struct ResultRow {
    std::string symbol;
    std::optional<Completeness> pattern;
    std::size_t n = 0;
    std::optional<double> accuracy_without;
    std::optional<double> accuracy_with;
    std::size_t excluded = 0;
    std::string error;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

enum class ResultFormat { Csv, Text, Markdown };

// Runs the experiment: trains on the train range (when enabled), detects
// pattern occurrences walk-forward over the first sample_count eval candles,
// scores them with and without the knowledge-store adjustment. Symbols run
// concurrently; rows come back in declared symbol order, four-wave before
// five-wave. Training state lives in a per-symbol in-memory store, so runs
// never contaminate each other or the durable store. Overlapping ranges
// raise ConfigError; a symbol that fails to load yields an error row.
std::vector<ResultRow> run_crossval(const ExperimentConfig& experiment, const GlobalConfig& config,
                                    Fetcher& fetcher);

// Stable column order: symbol,pattern,N,without,with,excluded. Accuracies
// render as percentages with two decimals ("58.33%"), empty cells as "n/a".
std::string format_results(const std::vector<ResultRow>& rows, ResultFormat format);

// Writes format_results(rows, Csv) to <results_dir>/<name>.csv.
std::filesystem::path write_results(const std::vector<ResultRow>& rows,
                                    const std::filesystem::path& results_dir,
                                    const std::string& name);

} // namespace elliott
