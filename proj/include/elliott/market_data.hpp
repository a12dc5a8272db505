#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "elliott/candle.hpp"

namespace elliott {

// Parses a CSV document (header `timestamp,open,high,low,close,volume`) or a
// JSON array of objects with those keys; the format is sniffed from the first
// non-space character. Rows are sorted by timestamp, then the series is
// validated. Throws ParseError / ValidationError.
CandleSeries parse_candles(std::string_view text, Interval interval, std::string symbol = "");

// Both serializers round-trip exactly: parse(serialize(s)) == s. Doubles are
// written in shortest-exact form.
std::string serialize_csv(const CandleSeries& series);
std::string serialize_json(const CandleSeries& series);

// Aggregates hourly candles into daily ones by UTC day: first open, max high,
// min low, last close, summed volume, stamped at 00:00 UTC. Only
// hourly -> daily is supported; anything else throws ValidationError.
CandleSeries resample(const CandleSeries& series, Interval target);

// Source of raw candle documents. fetch() returns the document text covering
// at least [from_ts, to_ts]; callers parse and slice it.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual std::string fetch(const std::string& symbol, Interval interval) = 0;
};

// Resolves `<dir>/<symbol>_<code>.csv|.json` (lowercased symbol also tried,
// `daily`/`hourly` aliases accepted). Throws DataError when nothing matches.
class FileFetcher : public Fetcher {
public:
    explicit FileFetcher(std::filesystem::path data_dir);
    std::string fetch(const std::string& symbol, Interval interval) override;

    // The path fetch() would read, for diagnostics.
    std::filesystem::path resolve(const std::string& symbol, Interval interval) const;

private:
    std::filesystem::path dir_;
};

// Convenience: fetch + parse + slice in one call.
CandleSeries load_series(Fetcher& fetcher, const std::string& symbol, Interval interval,
                         std::int64_t from_ts, std::int64_t to_ts);

} // namespace elliott
