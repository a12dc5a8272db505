#include "elliott/candle.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

#include "elliott/errors.hpp"

namespace elliott {

std::int64_t interval_seconds(Interval interval) {
    return interval == Interval::Hourly ? 3600 : 86400;
}

std::string_view interval_code(Interval interval) {
    return interval == Interval::Hourly ? "1h" : "1d";
}

std::optional<Interval> interval_from_code(std::string_view code) {
    if (code == "1h") return Interval::Hourly;
    if (code == "1d") return Interval::Daily;
    return std::nullopt;
}

void validate_candle(const Candle& c, const std::string& label) {
    const auto fail = [&](const std::string& what) {
        throw ValidationError("candle " + label + ": " + what);
    };
    for (double p : {c.open, c.high, c.low, c.close}) {
        if (!std::isfinite(p) || p <= 0.0) fail("prices must be finite and positive");
    }
    if (!std::isfinite(c.volume) || c.volume < 0.0) fail("volume must be finite and non-negative");
    if (c.low > std::min(c.open, c.close)) fail("low exceeds open/close");
    if (c.high < std::max(c.open, c.close)) fail("high below open/close");
}

void validate_series(const CandleSeries& series) {
    const std::int64_t step = interval_seconds(series.interval);
    for (std::size_t i = 0; i < series.candles.size(); ++i) {
        validate_candle(series.candles[i], std::to_string(series.candles[i].timestamp));
        if (i == 0) continue;
        const std::int64_t prev = series.candles[i - 1].timestamp;
        const std::int64_t cur = series.candles[i].timestamp;
        if (cur <= prev) {
            throw ValidationError("candle " + std::to_string(cur) +
                                  ": timestamps must be strictly increasing");
        }
        if ((cur - prev) % step != 0) {
            throw ValidationError("candle " + std::to_string(cur) +
                                  ": gap is not a multiple of the interval");
        }
    }
}

CandleSeries slice(const CandleSeries& series, std::int64_t from_ts, std::int64_t to_ts) {
    if (from_ts > to_ts) throw ValidationError("slice: from_ts is after to_ts");
    CandleSeries out;
    out.symbol = series.symbol;
    out.interval = series.interval;
    const auto lo = std::lower_bound(series.candles.begin(), series.candles.end(), from_ts,
                                     [](const Candle& c, std::int64_t t) { return c.timestamp < t; });
    const auto hi = std::upper_bound(series.candles.begin(), series.candles.end(), to_ts,
                                     [](std::int64_t t, const Candle& c) { return t < c.timestamp; });
    out.candles.assign(lo, hi);
    return out;
}

std::int64_t parse_iso_date(std::string_view text) {
    // Expected shape: YYYY-MM-DD.
    const auto fail = [&] {
        throw ParseError("invalid ISO date: '" + std::string(text) + "'");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
    int y = 0, m = 0, d = 0;
    auto num = [&](std::size_t pos, std::size_t len, int& out) {
        const char* b = text.data() + pos;
        auto [p, ec] = std::from_chars(b, b + len, out);
        if (ec != std::errc() || p != b + len) fail();
    };
    num(0, 4, y);
    num(5, 2, m);
    num(8, 2, d);
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) fail();
    const std::chrono::sys_days days{ymd};
    return std::chrono::duration_cast<std::chrono::seconds>(days.time_since_epoch()).count();
}

namespace {

std::chrono::year_month_day ymd_of(std::int64_t ts) {
    const std::chrono::sys_seconds secs{std::chrono::seconds{ts}};
    return std::chrono::year_month_day{std::chrono::floor<std::chrono::days>(secs)};
}

} // namespace

std::string format_iso_date(std::int64_t ts) {
    const auto ymd = ymd_of(ts);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

std::string format_compact_date(std::int64_t ts) {
    const auto ymd = ymd_of(ts);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d%02u%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

} // namespace elliott
