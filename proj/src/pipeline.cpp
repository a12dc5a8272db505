#include "elliott/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "elliott/chart.hpp"
#include "elliott/errors.hpp"
#include "elliott/json_io.hpp"

namespace elliott {

std::string_view role_name(Role role) {
    switch (role) {
        case Role::Coordinator: return "coordinator";
        case Role::DataEngineer: return "data_engineer";
        case Role::WaveAnalyst: return "wave_analyst";
        case Role::Backtester: return "backtester";
        case Role::TAExpert: return "ta_expert";
        case Role::Advisor: return "advisor";
        case Role::ReportWriter: return "report_writer";
    }
    return "?";
}

std::optional<Role> role_from_name(std::string_view name) {
    for (Role role : {Role::Coordinator, Role::DataEngineer, Role::WaveAnalyst, Role::Backtester,
                      Role::TAExpert, Role::Advisor, Role::ReportWriter}) {
        if (role_name(role) == name) return role;
    }
    return std::nullopt;
}

bool edge_allowed(Role from, Role to) {
    return (from == Role::Coordinator) != (to == Role::Coordinator);
}

std::string make_run_id(const AnalysisRequest& request, std::uint64_t seed) {
    std::string id = request.symbol;
    id += '_';
    id += interval_code(request.interval);
    id += '_';
    id += format_compact_date(request.from_ts);
    id += '_';
    id += format_compact_date(request.to_ts);
    id += "_s";
    id += std::to_string(seed);
    return id;
}

namespace {

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

template <typename F>
auto stage(Role role, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const PipelineError&) {
        throw;
    } catch (const std::exception& e) {
        throw PipelineError(std::string(role_name(role)) + ": " + e.what());
    }
}

AgentMessage msg(Role from, Role to, std::string kind, nlohmann::json payload) {
    AgentMessage m;
    m.from = from;
    m.to = to;
    m.kind = std::move(kind);
    m.payload = std::move(payload);
    return m;
}

// Ranks candidate patterns: conformance first, then span, then earlier start.
bool better_candidate(const ImpulsePattern& a, const ImpulsePattern& b) {
    if (a.fib.conformance_score != b.fib.conformance_score) {
        return a.fib.conformance_score > b.fib.conformance_score;
    }
    const auto span_a = a.final_pivot().candle_index - a.start().candle_index;
    const auto span_b = b.final_pivot().candle_index - b.start().candle_index;
    if (span_a != span_b) return span_a > span_b;
    return a.start().candle_index < b.start().candle_index;
}

struct WaveStageOutput {
    SwingSequence swings;
    std::vector<ImpulsePattern> impulse4;
    std::vector<ImpulsePattern> impulse5;
    std::size_t corrective_count = 0;
};

struct KbStageOutput {
    std::vector<KnowledgeRecord> records;
    bool trained_now = false;
};

} // namespace

RunResult run_analysis(const AnalysisRequest& request, const GlobalConfig& config, Fetcher& fetcher,
                       KnowledgeStore& store) {
    RunResult result;
    AnalysisBundle& bundle = result.bundle;
    std::vector<AgentMessage>& transcript = result.transcript;

    bundle.run_id = make_run_id(request, config.seed);
    bundle.symbol = request.symbol;
    bundle.interval = request.interval;
    bundle.from_ts = request.from_ts;
    bundle.to_ts = request.to_ts;
    bundle.seed = config.seed;

    // Data stage.
    transcript.push_back(msg(Role::Coordinator, Role::DataEngineer, "load_request",
                             {{"symbol", request.symbol},
                              {"interval", std::string(interval_code(request.interval))},
                              {"from_ts", request.from_ts},
                              {"to_ts", request.to_ts}}));
    bundle.series = stage(Role::DataEngineer, [&] {
        const auto text = fetcher.fetch(request.symbol, request.interval);
        const auto full = parse_candles(text, request.interval, request.symbol);
        auto window = slice(full, request.from_ts, request.to_ts);
        if (window.empty()) throw DataError("no candles in the requested window");
        return window;
    });
    transcript.push_back(msg(Role::DataEngineer, Role::Coordinator, "series_loaded",
                             {{"rows", bundle.series.size()},
                              {"first_ts", bundle.series.candles.front().timestamp},
                              {"last_ts", bundle.series.candles.back().timestamp}}));

    // Wave analysis and the knowledge-store pass run concurrently; their
    // requests go out first, replies are merged in fixed role order below.
    const double threshold = config.threshold_for(request.interval);
    transcript.push_back(msg(Role::Coordinator, Role::WaveAnalyst, "analyze_request",
                             {{"threshold", threshold}}));
    transcript.push_back(msg(Role::Coordinator, Role::Backtester, "kb_request",
                             {{"enabled", request.with_backtest}}));

    auto wave_future = std::async(std::launch::async, [&]() -> WaveStageOutput {
        return stage(Role::WaveAnalyst, [&] {
            WaveStageOutput out;
            out.swings = detect_swings(bundle.series, threshold);
            out.impulse4 = find_impulse(out.swings, Completeness::Incomplete4, config.wave);
            out.impulse5 = find_impulse(out.swings, Completeness::Complete5, config.wave);
            out.corrective_count = find_corrective(out.swings, std::nullopt, config.wave).size();
            return out;
        });
    });
    auto kb_future = std::async(std::launch::async, [&]() -> KbStageOutput {
        return stage(Role::Backtester, [&] {
            KbStageOutput out;
            if (!request.with_backtest) return out;
            out.records = store.records_for(request.symbol);
            if (out.records.empty()) {
                // Cold store: train over the requested window and persist.
                const auto fresh = train_backtester(bundle.series,
                                                    config.train_setup(request.interval),
                                                    config.train_params());
                for (const auto& rec : fresh) store.append(rec);
                out.records = fresh;
                out.trained_now = true;
            }
            return out;
        });
    });
    const KbStageOutput kb = kb_future.get();
    const WaveStageOutput waves = wave_future.get();

    transcript.push_back(msg(Role::Backtester, Role::Coordinator, "kb_status",
                             {{"enabled", request.with_backtest},
                              {"records", kb.records.size()},
                              {"trained_now", kb.trained_now}}));
    transcript.push_back(msg(Role::WaveAnalyst, Role::Coordinator, "patterns_found",
                             {{"impulse4", waves.impulse4.size()},
                              {"impulse5", waves.impulse5.size()},
                              {"corrective", waves.corrective_count}}));

    bundle.swings = waves.swings;
    bundle.stats = PatternStats{waves.impulse4.size(), waves.impulse5.size(), waves.corrective_count};
    bundle.kb_records = kb.records;
    bundle.trained_now = kb.trained_now;

    // Selection stage.
    transcript.push_back(msg(Role::Coordinator, Role::TAExpert, "expert_request",
                             {{"candidates", waves.impulse4.size() + waves.impulse5.size()}}));
    std::optional<ImpulsePattern> selected;
    std::optional<CorrectivePattern> corrective;
    stage(Role::TAExpert, [&] {
        for (const auto* pool : {&waves.impulse5, &waves.impulse4}) {
            for (const ImpulsePattern& p : *pool) {
                if (!selected || better_candidate(p, *selected)) selected = p;
            }
        }
        if (selected && selected->completeness == Completeness::Complete5) {
            auto followers = find_corrective(bundle.swings, selected, config.wave);
            if (!followers.empty()) corrective = std::move(followers.front());
        }
        return 0;
    });
    nlohmann::json selection_payload;
    if (selected) {
        selection_payload = {{"completeness", std::string(completeness_code(selected->completeness))},
                             {"direction", std::string(direction_name(selected->direction))},
                             {"start_index", selected->start().candle_index},
                             {"conformance", selected->fib.conformance_score},
                             {"corrective_attached", corrective.has_value()}};
    } else {
        selection_payload = {{"none", true}};
    }
    transcript.push_back(msg(Role::TAExpert, Role::Coordinator, "selection", selection_payload));
    if (selected) bundle.patterns.push_back(*selected);
    if (corrective) bundle.correctives.push_back(*corrective);

    // Advice stage.
    transcript.push_back(msg(Role::Coordinator, Role::Advisor, "advice_request",
                             {{"min_hit_rate", config.min_hit_rate}}));
    nlohmann::json advice_payload{{"none", true}};
    if (selected) {
        stage(Role::Advisor, [&] {
            const auto raw = make_forecast(*selected, corrective, bundle.series, config.forecast);
            if (!raw) return 0;
            Forecast adjusted = *raw;
            if (request.with_backtest) {
                const auto key = make_state_key(request.symbol, *selected, bundle.series,
                                                config.trend_window);
                KnowledgeStore scratch; // records already in hand; consult them in memory
                for (const auto& rec : kb.records) scratch.append(rec);
                const bool aligned =
                    raw->issued_at_index == selected->final_pivot().candle_index;
                adjusted = adjust_forecast(*raw, key, scratch, config.min_hit_rate, aligned);
            }
            bundle.forecasts.push_back(ForecastPair{*raw, adjusted});
            advice_payload = {{"raw_signal", std::string(signal_name(raw->signal))},
                              {"adjusted_signal", std::string(signal_name(adjusted.signal))}};
            return 0;
        });
    }
    transcript.push_back(msg(Role::Advisor, Role::Coordinator, "advice", advice_payload));

    // Report stage.
    transcript.push_back(msg(Role::Coordinator, Role::ReportWriter, "report_request",
                             {{"run_id", bundle.run_id}}));
    stage(Role::ReportWriter, [&] {
        result.report_md = write_report(bundle);
        result.chart_svg = render_chart(bundle);
        return 0;
    });
    transcript.push_back(msg(Role::ReportWriter, Role::Coordinator, "report_ready",
                             {{"report_bytes", result.report_md.size()},
                              {"chart_bytes", result.chart_svg.size()}}));

    for (std::size_t i = 0; i < transcript.size(); ++i) transcript[i].sequence = i + 1;
    return result;
}

std::string write_report(const AnalysisBundle& bundle) {
    std::ostringstream out;
    const auto date_at = [&](std::size_t index) {
        return format_iso_date(bundle.series.at(index).timestamp);
    };

    out << "# " << bundle.symbol << " " << (bundle.interval == Interval::Daily ? "daily" : "hourly")
        << " analysis\n\n";
    out << "Run `" << bundle.run_id << "` over " << format_iso_date(bundle.from_ts) << " to "
        << format_iso_date(bundle.to_ts) << " (" << bundle.series.size() << " candles, seed "
        << bundle.seed << ").\n\n";

    out << "## Summary\n\n";
    out << "- Swing pivots: " << bundle.swings.size() << "\n";
    out << "- Impulse candidates: " << bundle.stats.impulse5 << " five-wave, " << bundle.stats.impulse4
        << " four-wave; zigzag corrections: " << bundle.stats.corrective << "\n";
    if (!bundle.patterns.empty()) {
        const ImpulsePattern& p = bundle.patterns.front();
        out << "- Selected: " << completeness_display(p.completeness) << " "
            << direction_name(p.direction) << " impulse, conformance " << fmt2(p.fib.conformance_score)
            << (bundle.correctives.empty() ? "" : ", with completed A-B-C correction") << "\n";
    } else {
        out << "- Selected: none (no window satisfied the wave rules)\n";
    }
    if (!bundle.forecasts.empty()) {
        const ForecastPair& pair = bundle.forecasts.front();
        out << "- Signal: " << signal_name(pair.adjusted.signal) << " (raw "
            << signal_name(pair.raw.signal) << ") at " << fmt2(pair.raw.entry) << "\n";
    } else {
        out << "- Signal: none\n";
    }
    out << "- Knowledge store: " << bundle.kb_records.size() << " records consulted"
        << (bundle.trained_now ? " (trained this run)" : "") << "\n\n";

    const auto wave_rows = [&](const std::vector<Wave>& waves) {
        for (const Wave& w : waves) {
            out << "| " << wave_label_name(w.label) << " | " << date_at(w.start.candle_index) << " | "
                << date_at(w.end.candle_index) << " | " << fmt2(w.start.price) << " | "
                << fmt2(w.end.price) << " | " << fmt2(w.price_length()) << " |\n";
        }
    };
    if (!bundle.patterns.empty() || !bundle.correctives.empty()) {
        out << "## Detected pattern\n\n";
        out << "| Wave | From | To | Price from | Price to | Length |\n";
        out << "| --- | --- | --- | --- | --- | --- |\n";
        for (const ImpulsePattern& p : bundle.patterns) wave_rows(p.waves);
        for (const CorrectivePattern& p : bundle.correctives) wave_rows(p.waves);
        out << "\n";
    }

    if (!bundle.forecasts.empty()) {
        const ForecastPair& pair = bundle.forecasts.front();
        out << "## Forecast\n\n";
        out << "| Field | Value |\n| --- | --- |\n";
        out << "| Signal | " << signal_name(pair.adjusted.signal) << " |\n";
        out << "| Direction | " << direction_name(pair.adjusted.direction) << " |\n";
        out << "| Entry | " << fmt2(pair.adjusted.entry) << " |\n";
        out << "| Primary target | " << fmt2(pair.adjusted.primary_target) << " |\n";
        if (pair.adjusted.secondary_target) {
            out << "| Secondary target | " << fmt2(*pair.adjusted.secondary_target) << " |\n";
        }
        out << "| Stop loss | " << fmt2(pair.adjusted.stop_loss) << " |\n";
        out << "| Horizon | " << pair.adjusted.horizon_candles << " candles |\n";
        out << "| Issued | " << format_iso_date(pair.adjusted.issued_at_ts) << " |\n\n";
    }

    out << "## Risks and limitations\n\n";
    out << "- Wave counts rest on confirmed swing pivots; the newest leg is provisional and may "
           "repaint as more candles arrive.\n";
    out << "- Fibonacci conformance is a proximity score, not a guarantee; competing counts can "
           "score similarly.\n";
    out << "- Signals use close prices only: gaps, fees and slippage are not modeled, and horizons "
           "assume the historical pace of wave 1.\n";
    if (bundle.kb_records.empty()) {
        out << "- No stored outcomes were available for this symbol, so the signal is unadjusted.\n";
    }
    out << "\n## Chart\n\n![chart](chart.svg)\n";
    return out.str();
}

std::filesystem::path write_run_artifacts(const RunResult& result,
                                          const std::filesystem::path& runs_dir) {
    const auto dir = runs_dir / result.bundle.run_id;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw StoreError("cannot create " + dir.string());

    const auto write_file = [&](const char* name, const std::string& content) {
        const auto path = dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw StoreError("cannot open " + path.string());
        out << content;
        out.flush();
        if (!out) throw StoreError("write failed for " + path.string());
    };

    write_file("report.md", result.report_md);
    write_file("chart.svg", result.chart_svg);
    std::string transcript;
    for (const AgentMessage& m : result.transcript) transcript += to_json(m).dump() + "\n";
    write_file("transcript.jsonl", transcript);
    write_file("bundle.json", to_json(result.bundle).dump(2) + "\n");
    return dir;
}

} // namespace elliott
