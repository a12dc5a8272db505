#include "elliott/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "elliott/errors.hpp"
#include "elliott/json_io.hpp"

namespace elliott {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

constexpr std::string_view kHeader = "timestamp,open,high,low,close,volume";

double parse_double_field(std::string_view field, std::size_t row, const char* name) {
    field = trim(field);
    double value = 0.0;
    const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || p != field.data() + field.size()) {
        throw ParseError("row " + std::to_string(row) + ": bad " + name + " value '" +
                         std::string(field) + "'");
    }
    return value;
}

std::int64_t parse_ts_field(std::string_view field, std::size_t row) {
    field = trim(field);
    std::int64_t value = 0;
    const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || p != field.data() + field.size()) {
        throw ParseError("row " + std::to_string(row) + ": bad timestamp '" + std::string(field) + "'");
    }
    return value;
}

std::vector<Candle> parse_csv_rows(std::string_view text) {
    std::vector<Candle> rows;
    std::size_t pos = 0;
    std::size_t line_no = 0; // header = 0, data rows 1-based
    bool saw_header = false;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        line = trim(line);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kHeader) {
                throw ParseError("bad CSV header, expected '" + std::string(kHeader) + "'");
            }
            saw_header = true;
            continue;
        }
        ++line_no;
        std::array<std::string_view, 6> fields;
        std::size_t count = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (count == 6) {
                    throw ParseError("row " + std::to_string(line_no) + ": expected 6 fields");
                }
                fields[count++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (count != 6) {
            throw ParseError("row " + std::to_string(line_no) + ": expected 6 fields");
        }
        Candle c;
        c.timestamp = parse_ts_field(fields[0], line_no);
        c.open = parse_double_field(fields[1], line_no, "open");
        c.high = parse_double_field(fields[2], line_no, "high");
        c.low = parse_double_field(fields[3], line_no, "low");
        c.close = parse_double_field(fields[4], line_no, "close");
        c.volume = parse_double_field(fields[5], line_no, "volume");
        validate_candle(c, "row " + std::to_string(line_no));
        rows.push_back(c);
    }
    if (!saw_header) throw ParseError("empty document");
    return rows;
}

std::vector<Candle> parse_json_rows(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON document: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("JSON document must be an array of candle objects");
    std::vector<Candle> rows;
    rows.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        const std::string label = "element " + std::to_string(i);
        if (!item.is_object()) throw ParseError(label + ": expected an object");
        Candle c;
        auto num = [&](const char* key) {
            const auto it = item.find(key);
            if (it == item.end() || !it->is_number()) {
                throw ParseError(label + ": missing numeric field '" + key + "'");
            }
            return it->get<double>();
        };
        const auto ts = item.find("timestamp");
        if (ts == item.end() || !ts->is_number_integer()) {
            throw ParseError(label + ": missing integer field 'timestamp'");
        }
        c.timestamp = ts->get<std::int64_t>();
        c.open = num("open");
        c.high = num("high");
        c.low = num("low");
        c.close = num("close");
        c.volume = num("volume");
        validate_candle(c, label);
        rows.push_back(c);
    }
    return rows;
}

} // namespace

CandleSeries parse_candles(std::string_view text, Interval interval, std::string symbol) {
    std::string_view body = trim(text);
    // Strip leading blank lines for sniffing.
    while (!body.empty() && body.front() == '\n') body.remove_prefix(1);
    if (body.empty()) throw ParseError("empty document");

    CandleSeries series;
    series.symbol = std::move(symbol);
    series.interval = interval;
    series.candles = body.front() == '[' ? parse_json_rows(body) : parse_csv_rows(text);
    std::stable_sort(series.candles.begin(), series.candles.end(),
                     [](const Candle& a, const Candle& b) { return a.timestamp < b.timestamp; });
    validate_series(series);
    return series;
}

std::string serialize_csv(const CandleSeries& series) {
    std::string out{kHeader};
    out += '\n';
    char buf[32];
    const auto num = [&](double v) {
        const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
        (void)ec;
        out.append(buf, p);
    };
    for (const Candle& c : series.candles) {
        out += std::to_string(c.timestamp);
        out += ',';
        num(c.open);
        out += ',';
        num(c.high);
        out += ',';
        num(c.low);
        out += ',';
        num(c.close);
        out += ',';
        num(c.volume);
        out += '\n';
    }
    return out;
}

std::string serialize_json(const CandleSeries& series) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Candle& c : series.candles) arr.push_back(to_json(c));
    return arr.dump(2) + "\n";
}

CandleSeries resample(const CandleSeries& series, Interval target) {
    if (series.interval != Interval::Hourly || target != Interval::Daily) {
        throw ValidationError("resample: only hourly to daily is supported");
    }
    CandleSeries out;
    out.symbol = series.symbol;
    out.interval = Interval::Daily;
    const std::int64_t day = 86400;
    for (const Candle& c : series.candles) {
        // Hourly timestamps are non-negative in practice; floor division guards
        // pre-epoch data anyway.
        std::int64_t d = c.timestamp / day;
        if (c.timestamp % day < 0) --d;
        const std::int64_t stamp = d * day;
        if (!out.candles.empty() && out.candles.back().timestamp == stamp) {
            Candle& agg = out.candles.back();
            agg.high = std::max(agg.high, c.high);
            agg.low = std::min(agg.low, c.low);
            agg.close = c.close;
            agg.volume += c.volume;
        } else {
            Candle agg = c;
            agg.timestamp = stamp;
            out.candles.push_back(agg);
        }
    }
    validate_series(out);
    return out;
}

FileFetcher::FileFetcher(std::filesystem::path data_dir) : dir_(std::move(data_dir)) {}

std::filesystem::path FileFetcher::resolve(const std::string& symbol, Interval interval) const {
    std::string lower = symbol;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return char(std::tolower(ch)); });
    const std::string code{interval_code(interval)};
    const std::string alias = interval == Interval::Daily ? "daily" : "hourly";
    for (const std::string& stem : {symbol + "_" + code, lower + "_" + code,
                                    symbol + "_" + alias, lower + "_" + alias}) {
        for (const char* ext : {".csv", ".json"}) {
            const auto path = dir_ / (stem + ext);
            if (std::filesystem::exists(path)) return path;
        }
    }
    throw DataError("no data file for " + symbol + " (" + code + ") under " + dir_.string());
}

std::string FileFetcher::fetch(const std::string& symbol, Interval interval) {
    const auto path = resolve(symbol, interval);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CandleSeries load_series(Fetcher& fetcher, const std::string& symbol, Interval interval,
                         std::int64_t from_ts, std::int64_t to_ts) {
    const auto series = parse_candles(fetcher.fetch(symbol, interval), interval, symbol);
    return slice(series, from_ts, to_ts);
}

} // namespace elliott
