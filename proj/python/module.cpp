// pyelliott: thin python surface over the engine. Structured results cross
// the boundary as plain dicts/lists built from the same serialization used
// for bundle.json, so python sees exactly what the artifacts contain.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "elliott/candle.hpp"
#include "elliott/chart.hpp"
#include "elliott/config.hpp"
#include "elliott/errors.hpp"
#include "elliott/harness.hpp"
#include "elliott/json_io.hpp"
#include "elliott/learn.hpp"
#include "elliott/market_data.hpp"
#include "elliott/pipeline.hpp"
#include "elliott/swings.hpp"
#include "elliott/synth.hpp"
#include "elliott/walk.hpp"
#include "elliott/waves.hpp"

namespace py = pybind11;
using namespace elliott;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    using value_t = nlohmann::json::value_t;
    switch (j.type()) {
    case value_t::null:
        return py::none();
    case value_t::boolean:
        return py::bool_(j.get<bool>());
    case value_t::number_integer:
        return py::int_(j.get<std::int64_t>());
    case value_t::number_unsigned:
        return py::int_(j.get<std::uint64_t>());
    case value_t::number_float:
        return py::float_(j.get<double>());
    case value_t::string:
        return py::str(j.get<std::string>());
    case value_t::array: {
        py::list out;
        for (const auto& item : j) out.append(json_to_py(item));
        return out;
    }
    case value_t::object: {
        py::dict out;
        for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
        return out;
    }
    default:
        return py::none();
    }
}

nlohmann::json py_to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& item : obj.cast<py::dict>()) {
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        }
        return out;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
        return out;
    }
    throw py::type_error("value is not convertible to json");
}

Interval interval_arg(const std::string& code) {
    const auto iv = interval_from_code(code);
    if (!iv) throw ValidationError("bad interval '" + code + "' (use 1d/1h)");
    return *iv;
}

GlobalConfig config_arg(const std::string& config_path, const std::string& data_dir) {
    GlobalConfig cfg = config_path.empty() ? GlobalConfig{} : load_config(config_path);
    if (!data_dir.empty()) cfg.data_dir = data_dir;
    return cfg;
}

std::int64_t range_ts(const std::string& date, const CandleSeries& series, bool is_from) {
    if (date.empty()) {
        if (series.empty()) throw DataError("series has no candles");
        return is_from ? series.candles.front().timestamp : series.candles.back().timestamp;
    }
    return is_from ? parse_iso_date(date) : parse_iso_date(date) + 86399;
}

} // namespace

PYBIND11_MODULE(pyelliott, m) {
    m.doc() = "Elliott wave analysis engine bindings";

    py::register_exception<Error>(m, "EngineError");

    py::class_<CandleSeries>(m, "CandleSeries")
        .def_readonly("symbol", &CandleSeries::symbol)
        .def_property_readonly("interval",
                               [](const CandleSeries& s) {
                                   return std::string(interval_code(s.interval));
                               })
        .def("__len__", &CandleSeries::size)
        .def("candle",
             [](const CandleSeries& s, std::size_t i) { return json_to_py(to_json(s.at(i))); })
        .def("to_list", [](const CandleSeries& s) {
            nlohmann::json arr = nlohmann::json::array();
            for (const Candle& c : s.candles) arr.push_back(to_json(c));
            return json_to_py(arr);
        });

    m.def(
        "parse_candles",
        [](const std::string& text, const std::string& interval, const std::string& symbol) {
            return parse_candles(text, interval_arg(interval), symbol);
        },
        py::arg("text"), py::arg("interval") = "1d", py::arg("symbol") = "");

    m.def("serialize_csv", &serialize_csv, py::arg("series"));
    m.def("serialize_json", &serialize_json, py::arg("series"));

    m.def(
        "resample",
        [](const CandleSeries& series, const std::string& target) {
            return resample(series, interval_arg(target));
        },
        py::arg("series"), py::arg("target") = "1d");

    m.def(
        "load_series",
        [](const std::string& data_dir, const std::string& symbol, const std::string& interval,
           const std::string& from_date, const std::string& to_date) {
            FileFetcher fetcher{std::filesystem::path(data_dir)};
            const Interval iv = interval_arg(interval);
            auto full = parse_candles(fetcher.fetch(symbol, iv), iv, symbol);
            return slice(full, range_ts(from_date, full, true), range_ts(to_date, full, false));
        },
        py::arg("data_dir"), py::arg("symbol"), py::arg("interval") = "1d",
        py::arg("from_date") = "", py::arg("to_date") = "");

    m.def(
        "detect_swings",
        [](const CandleSeries& series, double threshold) {
            nlohmann::json arr = nlohmann::json::array();
            for (const SwingPoint& p : detect_swings(series, threshold)) {
                arr.push_back(to_json(p));
            }
            return json_to_py(arr);
        },
        py::arg("series"), py::arg("threshold") = 0.02);

    m.def(
        "find_patterns",
        [](const CandleSeries& series, double threshold, double fib_tolerance,
           bool require_w3_dominance) {
            WaveConfig wave;
            wave.fib_tolerance = fib_tolerance;
            wave.require_w3_dominance = require_w3_dominance;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& occ : scan_patterns(series, threshold, wave, true, true)) {
                nlohmann::json j = to_json(occ.pattern);
                j["detected_at"] = occ.detected_at;
                arr.push_back(std::move(j));
            }
            return json_to_py(arr);
        },
        py::arg("series"), py::arg("threshold") = 0.02, py::arg("fib_tolerance") = 0.10,
        py::arg("require_w3_dominance") = true);

    m.def(
        "fib_level", [](double high, double low, double ratio) { return fib_level(high, low, ratio); },
        py::arg("high"), py::arg("low"), py::arg("ratio"));

    m.def(
        "train",
        [](const CandleSeries& series, double threshold, std::uint64_t seed) {
            TrainSetup setup;
            setup.swing_threshold = threshold;
            TrainParams params;
            params.seed = seed;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& rec : train_backtester(series, setup, params)) {
                arr.push_back(to_json(rec));
            }
            return json_to_py(arr);
        },
        py::arg("series"), py::arg("threshold") = 0.02, py::arg("seed") = 42);

    m.def(
        "analyze",
        [](const std::string& symbol, const std::string& data_dir, const std::string& interval,
           const std::string& from_date, const std::string& to_date, std::uint64_t seed,
           bool with_backtest, const std::string& store_dir, const std::string& runs_dir,
           const std::string& config_path) {
            GlobalConfig cfg = config_arg(config_path, data_dir);
            cfg.seed = seed;
            const Interval iv = interval_arg(interval);
            FileFetcher fetcher{std::filesystem::path(cfg.data_dir)};

            AnalysisRequest request;
            request.symbol = symbol;
            request.interval = iv;
            request.with_backtest = with_backtest;
            const auto full = parse_candles(fetcher.fetch(symbol, iv), iv, symbol);
            request.from_ts = range_ts(from_date, full, true);
            request.to_ts = range_ts(to_date, full, false);

            KnowledgeStore store =
                store_dir.empty() ? KnowledgeStore{}
                                  : KnowledgeStore{std::filesystem::path(store_dir)};
            const RunResult result = run_analysis(request, cfg, fetcher, store);
            if (!runs_dir.empty()) write_run_artifacts(result, runs_dir);

            nlohmann::json out;
            out["bundle"] = to_json(result.bundle);
            out["report_md"] = result.report_md;
            out["chart_svg"] = result.chart_svg;
            nlohmann::json transcript = nlohmann::json::array();
            for (const AgentMessage& msg : result.transcript) transcript.push_back(to_json(msg));
            out["transcript"] = std::move(transcript);
            return json_to_py(out);
        },
        py::arg("symbol"), py::arg("data_dir"), py::arg("interval") = "1d",
        py::arg("from_date") = "", py::arg("to_date") = "", py::arg("seed") = 42,
        py::arg("with_backtest") = true, py::arg("store_dir") = "", py::arg("runs_dir") = "",
        py::arg("config_path") = "");

    m.def(
        "crossval",
        [](const std::string& config_path, const std::string& data_dir,
           const std::string& results_dir) {
            GlobalConfig cfg = config_arg(config_path, data_dir);
            if (!cfg.experiment) {
                throw ConfigError("config has no [experiment] section");
            }
            FileFetcher fetcher{std::filesystem::path(cfg.data_dir)};
            const auto rows = run_crossval(*cfg.experiment, cfg, fetcher);
            if (!results_dir.empty()) write_results(rows, results_dir, cfg.experiment->name);

            nlohmann::json arr = nlohmann::json::array();
            for (const ResultRow& row : rows) {
                nlohmann::json j;
                j["symbol"] = row.symbol;
                j["pattern"] = row.pattern ? nlohmann::json(completeness_display(*row.pattern))
                                           : nlohmann::json(nullptr);
                j["n"] = row.n;
                j["without"] = row.accuracy_without ? nlohmann::json(*row.accuracy_without)
                                                    : nlohmann::json(nullptr);
                j["with"] =
                    row.accuracy_with ? nlohmann::json(*row.accuracy_with) : nlohmann::json(nullptr);
                j["excluded"] = row.excluded;
                j["error"] = row.error;
                arr.push_back(std::move(j));
            }
            nlohmann::json out;
            out["rows"] = std::move(arr);
            out["csv"] = format_results(rows, ResultFormat::Csv);
            return json_to_py(out);
        },
        py::arg("config_path"), py::arg("data_dir") = "", py::arg("results_dir") = "");

    m.def(
        "simulate",
        [](const std::string& pattern, const std::string& direction, double start_price,
           double wave1_length, double noise, std::uint64_t seed, const std::string& symbol,
           const std::string& interval) {
            SynthSpec spec;
            if (pattern == "impulse4") spec.pattern = SynthPattern::Impulse4;
            else if (pattern == "impulse5") spec.pattern = SynthPattern::Impulse5;
            else if (pattern == "zigzag") spec.pattern = SynthPattern::Zigzag;
            else throw ValidationError("bad pattern '" + pattern + "'");
            spec.direction = direction == "down" ? Direction::Down : Direction::Up;
            spec.start_price = start_price;
            spec.wave1_length = wave1_length;
            spec.noise = noise;
            spec.symbol = symbol;
            spec.interval = interval_arg(interval);
            const SynthResult result = synth_series(spec, seed);
            nlohmann::json pivots = nlohmann::json::array();
            for (const SwingPoint& p : result.pivots) pivots.push_back(to_json(p));
            nlohmann::json out;
            out["csv"] = serialize_csv(result.series);
            out["pivots"] = std::move(pivots);
            py::dict d = json_to_py(out).cast<py::dict>();
            d["series"] = py::cast(result.series);
            return py::object(d);
        },
        py::arg("pattern") = "impulse5", py::arg("direction") = "up",
        py::arg("start_price") = 100.0, py::arg("wave1_length") = 10.0, py::arg("noise") = 0.0,
        py::arg("seed") = 42, py::arg("symbol") = "SYNTH", py::arg("interval") = "1d");

    m.def(
        "render_chart",
        [](const py::dict& bundle) {
            AnalysisBundle b;
            from_json(py_to_json(bundle), b);
            return render_chart(b);
        },
        py::arg("bundle"));
}
