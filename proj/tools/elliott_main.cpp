// Command line front end: analyze / backtest / crossval / simulate / render.
//
// Exit codes: 0 success, 1 usage or configuration problem, 2 data or
// processing failure.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elliott/candle.hpp"
#include "elliott/chart.hpp"
#include "elliott/config.hpp"
#include "elliott/errors.hpp"
#include "elliott/harness.hpp"
#include "elliott/json_io.hpp"
#include "elliott/learn.hpp"
#include "elliott/market_data.hpp"
#include "elliott/pipeline.hpp"
#include "elliott/synth.hpp"

namespace {

using namespace elliott;

std::string upper_copy(std::string s) {
    for (char& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

Interval interval_from(const std::string& code) {
    if (code == "1h") return Interval::Hourly;
    return Interval::Daily;
}

// Shared flags; each subcommand registers the subset it understands.
struct Options {
    std::string config_path;
    std::string data_dir;
    std::string interval = "1d";
    std::string from_date;
    std::string to_date;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool no_backtest = false;
};

GlobalConfig resolve_config(const Options& opts) {
    GlobalConfig cfg = opts.config_path.empty() ? GlobalConfig{} : load_config(opts.config_path);
    if (const char* env = std::getenv("ELLIOTT_DATA_DIR"); env && *env) cfg.data_dir = env;
    if (!opts.data_dir.empty()) cfg.data_dir = opts.data_dir;
    if (opts.seed_set) cfg.seed = opts.seed;
    return cfg;
}

// --from/--to default to the full extent of the stored series. A --to date
// is inclusive through its end of day so hourly candles are not cut off.
void resolve_range(const Options& opts, Fetcher& fetcher, const std::string& symbol, Interval iv,
                   std::int64_t& from_ts, std::int64_t& to_ts) {
    if (opts.from_date.empty() || opts.to_date.empty()) {
        const auto series = parse_candles(fetcher.fetch(symbol, iv), iv, symbol);
        if (series.empty()) throw DataError("no candles available for " + symbol);
        from_ts = series.candles.front().timestamp;
        to_ts = series.candles.back().timestamp;
    }
    if (!opts.from_date.empty()) from_ts = parse_iso_date(opts.from_date);
    if (!opts.to_date.empty()) to_ts = parse_iso_date(opts.to_date) + 86399;
    if (from_ts > to_ts) throw ConfigError("--from is after --to");
}

void register_common(CLI::App* sub, Options& opts, bool with_range) {
    sub->add_option("--config", opts.config_path, "Configuration file");
    sub->add_option("--data-dir", opts.data_dir, "Candle data directory (overrides config and env)");
    sub->add_option("--seed", opts.seed, "Random seed override")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    if (with_range) {
        sub->add_option("--interval", opts.interval, "Candle interval")
            ->check(CLI::IsMember({"1d", "1h"}))
            ->capture_default_str();
        sub->add_option("--from", opts.from_date, "Window start date (YYYY-MM-DD)");
        sub->add_option("--to", opts.to_date, "Window end date (YYYY-MM-DD, inclusive)");
    }
}

int cmd_analyze(const Options& opts, const std::string& symbol_arg) {
    const GlobalConfig cfg = resolve_config(opts);
    const Interval iv = interval_from(opts.interval);
    const std::string symbol = upper_copy(symbol_arg);

    FileFetcher fetcher(cfg.data_dir);
    AnalysisRequest request;
    request.symbol = symbol;
    request.interval = iv;
    request.with_backtest = !opts.no_backtest;
    resolve_range(opts, fetcher, symbol, iv, request.from_ts, request.to_ts);

    KnowledgeStore store{std::filesystem::path(cfg.store_dir)};
    const RunResult result = run_analysis(request, cfg, fetcher, store);
    const auto dir = write_run_artifacts(result, cfg.runs_dir);

    const AnalysisBundle& b = result.bundle;
    std::cout << "run " << b.run_id << ": " << b.series.size() << " candles, " << b.swings.size()
              << " swing points\n";
    if (b.patterns.empty()) {
        std::cout << "no qualifying impulse pattern in the window\n";
    } else {
        const ImpulsePattern& p = b.patterns.front();
        std::cout << "selected " << completeness_display(p.completeness) << " "
                  << direction_name(p.direction) << " impulse, conformance "
                  << p.fib.conformance_score << "\n";
    }
    for (const ForecastPair& f : b.forecasts) {
        std::cout << "signal " << signal_name(f.adjusted.signal) << " (raw "
                  << signal_name(f.raw.signal) << ")\n";
    }
    if (b.trained_now) std::cout << "knowledge store was cold; trained on this window\n";
    std::cout << "artifacts: " << dir.string() << "\n";
    return 0;
}

int cmd_backtest(const Options& opts, const std::string& symbol_arg) {
    const GlobalConfig cfg = resolve_config(opts);
    const Interval iv = interval_from(opts.interval);
    const std::string symbol = upper_copy(symbol_arg);

    FileFetcher fetcher(cfg.data_dir);
    std::int64_t from_ts = 0;
    std::int64_t to_ts = 0;
    resolve_range(opts, fetcher, symbol, iv, from_ts, to_ts);

    const auto full = parse_candles(fetcher.fetch(symbol, iv), iv, symbol);
    const auto window = slice(full, from_ts, to_ts);
    if (window.empty()) throw DataError("no candles for " + symbol + " in the requested window");

    const auto records = train_backtester(window, cfg.train_setup(iv), cfg.train_params());
    KnowledgeStore store{std::filesystem::path(cfg.store_dir)};
    for (const KnowledgeRecord& r : records) store.append(r);

    std::cout << "trained " << records.size() << " state records for " << symbol << " over "
              << window.size() << " candles\n";
    std::cout << "store: " << (std::filesystem::path(cfg.store_dir) / (symbol + ".jsonl")).string()
              << "\n";
    return 0;
}

int cmd_crossval(const Options& opts) {
    GlobalConfig cfg = resolve_config(opts);
    if (!cfg.experiment) {
        throw ConfigError("crossval needs a config file with an [experiment] section");
    }
    if (opts.no_backtest) cfg.experiment->with_backtesting = false;

    FileFetcher fetcher(cfg.data_dir);
    const auto rows = run_crossval(*cfg.experiment, cfg, fetcher);
    const auto path = write_results(rows, cfg.results_dir, cfg.experiment->name);

    std::cout << format_results(rows, ResultFormat::Text);
    std::cout << "\nresults: " << path.string() << "\n";
    return 0;
}

int cmd_simulate(const Options& opts, const std::string& pattern, const std::string& direction,
                 const std::string& symbol, double start_price, double wave1, double noise,
                 const std::string& counts_csv, const std::string& start_date,
                 const std::string& out_path, const std::string& pivots_path) {
    SynthSpec spec;
    if (pattern == "impulse4") spec.pattern = SynthPattern::Impulse4;
    else if (pattern == "impulse5") spec.pattern = SynthPattern::Impulse5;
    else spec.pattern = SynthPattern::Zigzag;
    spec.direction = direction == "down" ? Direction::Down : Direction::Up;
    spec.symbol = upper_copy(symbol);
    spec.interval = interval_from(opts.interval);
    spec.start_price = start_price;
    spec.wave1_length = wave1;
    spec.noise = noise;
    if (!start_date.empty()) spec.start_ts = parse_iso_date(start_date);
    if (!counts_csv.empty()) {
        std::istringstream in(counts_csv);
        std::string item;
        while (std::getline(in, item, ',')) spec.candles_per_wave.push_back(std::stoi(item));
    }

    const SynthResult result = synth_series(spec, opts.seed_set ? opts.seed : 42);
    const std::string csv = serialize_csv(result.series);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out || !(out << csv) || !out.flush()) {
            throw StoreError("cannot write " + out_path);
        }
        std::cout << "wrote " << result.series.size() << " candles to " << out_path << "\n";
    }
    if (!pivots_path.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const SwingPoint& p : result.pivots) arr.push_back(to_json(p));
        std::ofstream out(pivots_path, std::ios::binary);
        if (!out || !(out << arr.dump(2) << "\n")) throw StoreError("cannot write " + pivots_path);
        std::cout << "wrote " << result.pivots.size() << " pivots to " << pivots_path << "\n";
    }
    return 0;
}

int cmd_render(const Options& opts, const std::string& run_id, const std::string& runs_dir_flag) {
    const GlobalConfig cfg = resolve_config(opts);
    const std::filesystem::path runs_dir = runs_dir_flag.empty()
                                               ? std::filesystem::path(cfg.runs_dir)
                                               : std::filesystem::path(runs_dir_flag);
    const auto bundle_path = runs_dir / run_id / "bundle.json";

    std::ifstream in(bundle_path, std::ios::binary);
    if (!in) throw DataError("cannot open " + bundle_path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad bundle json: " + std::string(e.what()));
    }
    AnalysisBundle bundle;
    from_json(j, bundle);

    const std::string svg = render_chart(bundle);
    const auto svg_path = runs_dir / run_id / "chart.svg";
    std::ofstream out(svg_path, std::ios::binary);
    if (!out || !(out << svg) || !out.flush()) throw StoreError("cannot write " + svg_path.string());
    std::cout << "rendered " << svg_path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elliott wave pattern analysis and backtesting"};
    app.require_subcommand(1);

    Options opts;
    std::string symbol;
    int rc = 0;

    auto* analyze = app.add_subcommand("analyze", "Run the agent pipeline over one symbol");
    analyze->add_option("symbol", symbol, "Ticker symbol")->required();
    register_common(analyze, opts, true);
    analyze->add_flag("--no-backtest", opts.no_backtest, "Skip the knowledge-store stage");
    analyze->callback([&] { rc = cmd_analyze(opts, symbol); });

    auto* backtest = app.add_subcommand("backtest", "Train the Q-learning store for one symbol");
    backtest->add_option("symbol", symbol, "Ticker symbol")->required();
    register_common(backtest, opts, true);
    backtest->callback([&] { rc = cmd_backtest(opts, symbol); });

    auto* crossval = app.add_subcommand("crossval", "Run the configured cross-validation experiment");
    register_common(crossval, opts, false);
    crossval->add_flag("--no-backtest", opts.no_backtest, "Force the without-backtesting arm only");
    crossval->callback([&] { rc = cmd_crossval(opts); });

    std::string sim_pattern = "impulse5";
    std::string sim_direction = "up";
    std::string sim_symbol = "SYNTH";
    std::string sim_counts;
    std::string sim_start_date;
    std::string sim_out;
    std::string sim_pivots;
    double sim_price = 100.0;
    double sim_wave1 = 10.0;
    double sim_noise = 0.0;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic pattern series");
    register_common(simulate, opts, true);
    simulate->add_option("--pattern", sim_pattern, "Pattern shape")
        ->check(CLI::IsMember({"impulse4", "impulse5", "zigzag"}))
        ->capture_default_str();
    simulate->add_option("--direction", sim_direction, "Pattern direction")
        ->check(CLI::IsMember({"up", "down"}))
        ->capture_default_str();
    simulate->add_option("--symbol", sim_symbol, "Symbol stamped on the series")
        ->capture_default_str();
    simulate->add_option("--start-price", sim_price, "Price at the pattern origin")
        ->capture_default_str();
    simulate->add_option("--wave1", sim_wave1, "Wave 1 length in price units")
        ->capture_default_str();
    simulate->add_option("--noise", sim_noise, "Interior close jitter")->capture_default_str();
    simulate->add_option("--counts", sim_counts, "Candles per leg, comma separated");
    simulate->add_option("--start-date", sim_start_date, "First candle date (YYYY-MM-DD)");
    simulate->add_option("--out", sim_out, "Output CSV path ('-' for stdout)");
    simulate->add_option("--pivots-out", sim_pivots, "Also write pattern pivots as JSON");
    simulate->callback([&] {
        rc = cmd_simulate(opts, sim_pattern, sim_direction, sim_symbol, sim_price, sim_wave1,
                          sim_noise, sim_counts, sim_start_date, sim_out, sim_pivots);
    });

    std::string run_id;
    std::string runs_dir_flag;
    auto* render = app.add_subcommand("render", "Re-render the chart for a stored run");
    render->add_option("--run", run_id, "Run id under the runs directory")->required();
    render->add_option("--runs-dir", runs_dir_flag, "Runs directory (overrides config)");
    register_common(render, opts, false);
    render->callback([&] { rc = cmd_render(opts, run_id, runs_dir_flag); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const elliott::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const elliott::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
