#include "elliott/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "elliott/errors.hpp"

namespace elliott {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_num(std::string_view value, std::size_t line) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || p != value.data() + value.size()) {
        bad(line, "bad number '" + std::string(value) + "'");
    }
    return out;
}

std::int64_t parse_int(std::string_view value, std::size_t line) {
    std::int64_t out = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || p != value.data() + value.size()) {
        bad(line, "bad integer '" + std::string(value) + "'");
    }
    return out;
}

std::uint64_t parse_uint(std::string_view value, std::size_t line) {
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || p != value.data() + value.size()) {
        bad(line, "bad unsigned integer '" + std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view value, std::size_t line) {
    if (value == "true") return true;
    if (value == "false") return false;
    bad(line, "bad boolean '" + std::string(value) + "' (use true/false)");
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
        if (i == value.size() || value[i] == ',') {
            const auto item = trim(value.substr(start, i - start));
            if (!item.empty()) out.emplace_back(item);
            start = i + 1;
        }
    }
    return out;
}

std::string format_num(double v) {
    char buf[32];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

std::int64_t parse_date_value(std::string_view value, std::size_t line) {
    try {
        return parse_iso_date(value);
    } catch (const ParseError& e) {
        bad(line, e.what());
    }
}

} // namespace

GlobalConfig parse_config(std::string_view text) {
    GlobalConfig cfg;
    ExperimentConfig exp;
    bool has_experiment = false;

    std::string section; // "", "daily", "hourly", "experiment"
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        if (line.front() == '[') {
            if (line.back() != ']') bad(line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "daily" && section != "hourly" && section != "experiment") {
                bad(line_no, "unknown section [" + section + "]");
            }
            if (section == "experiment") has_experiment = true;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) bad(line_no, "expected key=value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));

        if (section == "daily" || section == "hourly") {
            if (key == "swing_threshold") {
                (section == "daily" ? cfg.daily_threshold : cfg.hourly_threshold) =
                    parse_num(value, line_no);
            } else {
                bad(line_no, "unknown key '" + key + "' in [" + section + "]");
            }
            continue;
        }

        if (section == "experiment") {
            if (key == "name") exp.name = std::string(value);
            else if (key == "symbols") exp.symbols = split_list(value);
            else if (key == "interval") {
                const auto iv = interval_from_code(value);
                if (!iv) bad(line_no, "bad interval '" + std::string(value) + "' (use 1d/1h)");
                exp.interval = *iv;
            }
            // A `*_to` date is inclusive through its end of day, so hourly
            // candles inside the final day stay in range.
            else if (key == "train_from") exp.train.from_ts = parse_date_value(value, line_no);
            else if (key == "train_to") exp.train.to_ts = parse_date_value(value, line_no) + 86399;
            else if (key == "eval_from") exp.eval.from_ts = parse_date_value(value, line_no);
            else if (key == "eval_to") exp.eval.to_ts = parse_date_value(value, line_no) + 86399;
            else if (key == "sample_count") exp.sample_count = std::size_t(parse_int(value, line_no));
            else if (key == "with_backtesting") exp.with_backtesting = parse_bool(value, line_no);
            else bad(line_no, "unknown key '" + key + "' in [experiment]");
            continue;
        }

        if (key == "seed") cfg.seed = parse_uint(value, line_no);
        else if (key == "data_dir") cfg.data_dir = std::string(value);
        else if (key == "store_dir") cfg.store_dir = std::string(value);
        else if (key == "runs_dir") cfg.runs_dir = std::string(value);
        else if (key == "results_dir") cfg.results_dir = std::string(value);
        else if (key == "fib_tolerance") cfg.wave.fib_tolerance = parse_num(value, line_no);
        else if (key == "require_w3_dominance") cfg.wave.require_w3_dominance = parse_bool(value, line_no);
        else if (key == "canonical_ratios") {
            cfg.wave.canonical_ratios.clear();
            for (const auto& item : split_list(value)) {
                cfg.wave.canonical_ratios.push_back(parse_num(item, line_no));
            }
            if (cfg.wave.canonical_ratios.empty()) bad(line_no, "canonical_ratios must not be empty");
        } else if (key == "extension_ratio") cfg.forecast.extension_ratio = parse_num(value, line_no);
        else if (key == "stop_buffer") cfg.forecast.stop_buffer = parse_num(value, line_no);
        else if (key == "horizon_unit") {
            if (value == "candles") cfg.forecast.horizon_unit = HorizonUnit::Candles;
            else if (value == "price") cfg.forecast.horizon_unit = HorizonUnit::Price;
            else bad(line_no, "bad horizon_unit '" + std::string(value) + "' (use candles/price)");
        } else if (key == "symmetry_tolerance") cfg.symmetry_tolerance = parse_num(value, line_no);
        else if (key == "trend_window") cfg.trend_window = int(parse_int(value, line_no));
        else if (key == "min_hit_rate") cfg.min_hit_rate = parse_num(value, line_no);
        else if (key == "alpha") cfg.train.alpha = parse_num(value, line_no);
        else if (key == "gamma") cfg.train.gamma = parse_num(value, line_no);
        else if (key == "epsilon") cfg.train.epsilon = parse_num(value, line_no);
        else if (key == "episodes") cfg.train.episodes = int(parse_int(value, line_no));
        else bad(line_no, "unknown key '" + key + "'");
    }

    if (has_experiment) {
        if (exp.symbols.empty()) throw ConfigError("[experiment] needs at least one symbol");
        cfg.experiment = std::move(exp);
    }

    // Range checks keep later stages free of silent misbehavior.
    const auto check_unit = [](double v, const char* name) {
        if (!(v > 0.0) || !(v < 1.0)) {
            throw ConfigError(std::string(name) + " must lie in (0, 1)");
        }
    };
    check_unit(cfg.daily_threshold, "daily swing_threshold");
    check_unit(cfg.hourly_threshold, "hourly swing_threshold");
    check_unit(cfg.symmetry_tolerance, "symmetry_tolerance");
    if (!(cfg.wave.fib_tolerance > 0.0)) throw ConfigError("fib_tolerance must be positive");
    if (cfg.trend_window < 1) throw ConfigError("trend_window must be positive");
    if (!(cfg.min_hit_rate >= 0.0 && cfg.min_hit_rate <= 1.0)) {
        throw ConfigError("min_hit_rate must lie in [0, 1]");
    }
    if (!(cfg.train.alpha > 0.0 && cfg.train.alpha <= 1.0)) {
        throw ConfigError("alpha must lie in (0, 1]");
    }
    if (!(cfg.train.gamma >= 0.0 && cfg.train.gamma < 1.0)) {
        throw ConfigError("gamma must lie in [0, 1)");
    }
    if (!(cfg.train.epsilon >= 0.0 && cfg.train.epsilon <= 1.0)) {
        throw ConfigError("epsilon must lie in [0, 1]");
    }
    if (cfg.train.episodes < 1) throw ConfigError("episodes must be positive");
    return cfg;
}

std::string serialize_config(const GlobalConfig& cfg) {
    std::ostringstream out;
    out << "seed=" << cfg.seed << '\n';
    out << "data_dir=" << cfg.data_dir.string() << '\n';
    out << "store_dir=" << cfg.store_dir.string() << '\n';
    out << "runs_dir=" << cfg.runs_dir.string() << '\n';
    out << "results_dir=" << cfg.results_dir.string() << '\n';
    out << "fib_tolerance=" << format_num(cfg.wave.fib_tolerance) << '\n';
    out << "require_w3_dominance=" << (cfg.wave.require_w3_dominance ? "true" : "false") << '\n';
    out << "canonical_ratios=";
    for (std::size_t i = 0; i < cfg.wave.canonical_ratios.size(); ++i) {
        if (i) out << ',';
        out << format_num(cfg.wave.canonical_ratios[i]);
    }
    out << '\n';
    out << "extension_ratio=" << format_num(cfg.forecast.extension_ratio) << '\n';
    out << "stop_buffer=" << format_num(cfg.forecast.stop_buffer) << '\n';
    out << "horizon_unit=" << (cfg.forecast.horizon_unit == HorizonUnit::Candles ? "candles" : "price")
        << '\n';
    out << "symmetry_tolerance=" << format_num(cfg.symmetry_tolerance) << '\n';
    out << "trend_window=" << cfg.trend_window << '\n';
    out << "min_hit_rate=" << format_num(cfg.min_hit_rate) << '\n';
    out << "alpha=" << format_num(cfg.train.alpha) << '\n';
    out << "gamma=" << format_num(cfg.train.gamma) << '\n';
    out << "epsilon=" << format_num(cfg.train.epsilon) << '\n';
    out << "episodes=" << cfg.train.episodes << '\n';
    out << "\n[daily]\nswing_threshold=" << format_num(cfg.daily_threshold) << '\n';
    out << "\n[hourly]\nswing_threshold=" << format_num(cfg.hourly_threshold) << '\n';
    if (cfg.experiment) {
        const ExperimentConfig& e = *cfg.experiment;
        out << "\n[experiment]\n";
        out << "name=" << e.name << '\n';
        out << "symbols=";
        for (std::size_t i = 0; i < e.symbols.size(); ++i) {
            if (i) out << ',';
            out << e.symbols[i];
        }
        out << '\n';
        out << "interval=" << interval_code(e.interval) << '\n';
        // Inverse of the end-of-day shift applied while parsing `*_to` dates.
        out << "train_from=" << format_iso_date(e.train.from_ts) << '\n';
        out << "train_to=" << format_iso_date(e.train.to_ts - 86399) << '\n';
        out << "eval_from=" << format_iso_date(e.eval.from_ts) << '\n';
        out << "eval_to=" << format_iso_date(e.eval.to_ts - 86399) << '\n';
        out << "sample_count=" << e.sample_count << '\n';
        out << "with_backtesting=" << (e.with_backtesting ? "true" : "false") << '\n';
    }
    return out.str();
}

GlobalConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace elliott
