#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elliott {

enum class Interval { Hourly, Daily };

std::int64_t interval_seconds(Interval interval);
std::string_view interval_code(Interval interval); // "1h" / "1d"
std::optional<Interval> interval_from_code(std::string_view code);

struct Candle {
    std::int64_t timestamp = 0; // unix epoch seconds, UTC
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;

    friend bool operator==(const Candle&, const Candle&) = default;
};

struct CandleSeries {
    std::string symbol;
    Interval interval = Interval::Daily;
    std::vector<Candle> candles;

    std::size_t size() const { return candles.size(); }
    bool empty() const { return candles.empty(); }
    const Candle& at(std::size_t i) const { return candles.at(i); }

    friend bool operator==(const CandleSeries&, const CandleSeries&) = default;
};

// Throws ValidationError naming the offending candle. `label` identifies the
// candle in messages (a row number or timestamp).
void validate_candle(const Candle& candle, const std::string& label);

// Checks ordering and spacing: strictly increasing timestamps, gaps that are
// exact multiples of the interval, and per-candle price/volume invariants.
void validate_series(const CandleSeries& series);

// Candles with from_ts <= timestamp <= to_ts. Throws ValidationError when
// from_ts > to_ts; an empty result is legal.
CandleSeries slice(const CandleSeries& series, std::int64_t from_ts, std::int64_t to_ts);

// "2023-09-01" -> epoch seconds at 00:00 UTC. Throws ParseError.
std::int64_t parse_iso_date(std::string_view text);
std::string format_iso_date(std::int64_t ts);     // "2023-09-01"
std::string format_compact_date(std::int64_t ts); // "20230901", used in run ids

} // namespace elliott
