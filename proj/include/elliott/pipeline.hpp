#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "elliott/candle.hpp"
#include "elliott/config.hpp"
#include "elliott/forecast.hpp"
#include "elliott/learn.hpp"
#include "elliott/market_data.hpp"
#include "elliott/swings.hpp"
#include "elliott/waves.hpp"

namespace elliott {

enum class Role {
    Coordinator,
    DataEngineer,
    WaveAnalyst,
    Backtester,
    TAExpert,
    Advisor,
    ReportWriter,
};

std::string_view role_name(Role role);
std::optional<Role> role_from_name(std::string_view name);

// The message graph is a star: every hop has the coordinator on exactly one
// end. Specialists never talk to each other directly.
bool edge_allowed(Role from, Role to);

struct AgentMessage {
    std::uint64_t sequence = 0; // 1-based position in the transcript
    Role from = Role::Coordinator;
    Role to = Role::Coordinator;
    std::string kind;
    nlohmann::json payload;

    friend bool operator==(const AgentMessage&, const AgentMessage&) = default;
};

struct AnalysisRequest {
    std::string symbol;
    Interval interval = Interval::Daily;
    std::int64_t from_ts = 0;
    std::int64_t to_ts = 0;
    bool with_backtest = true;

    friend bool operator==(const AnalysisRequest&, const AnalysisRequest&) = default;
};

struct ForecastPair {
    Forecast raw;
    Forecast adjusted;

    friend bool operator==(const ForecastPair&, const ForecastPair&) = default;
};

// Candidate counts surfaced in the report.
struct PatternStats {
    std::size_t impulse4 = 0;
    std::size_t impulse5 = 0;
    std::size_t corrective = 0;

    friend bool operator==(const PatternStats&, const PatternStats&) = default;
};

// Everything a run produced, sufficient to re-render its chart.
struct AnalysisBundle {
    std::string run_id;
    std::string symbol;
    Interval interval = Interval::Daily;
    std::int64_t from_ts = 0;
    std::int64_t to_ts = 0;
    std::uint64_t seed = 0;
    CandleSeries series; // the analyzed window
    SwingSequence swings;
    PatternStats stats;
    std::vector<ImpulsePattern> patterns;        // the selected pattern, when any
    std::vector<CorrectivePattern> correctives;  // its attached correction, when any
    std::vector<ForecastPair> forecasts;
    std::vector<KnowledgeRecord> kb_records;     // records consulted for adjustment
    bool trained_now = false;                    // store was cold and filled this run

    friend bool operator==(const AnalysisBundle&, const AnalysisBundle&) = default;
};

struct RunResult {
    AnalysisBundle bundle;
    std::vector<AgentMessage> transcript;
    std::string report_md;
    std::string chart_svg;
};

// Deterministic run id: <SYMBOL>_<interval>_<from>_<to>_s<seed>.
std::string make_run_id(const AnalysisRequest& request, std::uint64_t seed);

// Drives the whole agent round-trip for one symbol and window: load, swing
// and wave analysis concurrently with the knowledge-store pass, selection,
// advice, report. The wave-analysis and backtesting stages run concurrently;
// their replies are merged in fixed role order so the transcript is
// deterministic. A cold store triggers training over the requested window.
// Stage failures surface as PipelineError naming the stage.
RunResult run_analysis(const AnalysisRequest& request, const GlobalConfig& config, Fetcher& fetcher,
                       KnowledgeStore& store);

// Renders the markdown report for a bundle (also done inside run_analysis).
std::string write_report(const AnalysisBundle& bundle);

// Writes report.md, chart.svg, transcript.jsonl and bundle.json under
// <runs_dir>/<run_id>/ and returns that directory.
std::filesystem::path write_run_artifacts(const RunResult& result,
                                          const std::filesystem::path& runs_dir);

} // namespace elliott
