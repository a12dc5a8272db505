#include <doctest.h>

#include "elliott/candle.hpp"
#include "elliott/errors.hpp"
#include "support/oracles.hpp"

using namespace elliott;
using testsupport::series_from_closes;

TEST_SUITE_BEGIN("candle");

TEST_CASE("interval codes and spans") {
    CHECK(interval_seconds(Interval::Daily) == 86400);
    CHECK(interval_seconds(Interval::Hourly) == 3600);
    CHECK(interval_code(Interval::Daily) == "1d");
    CHECK(interval_code(Interval::Hourly) == "1h");
    CHECK(interval_from_code("1d") == Interval::Daily);
    CHECK(interval_from_code("1h") == Interval::Hourly);
    CHECK_FALSE(interval_from_code("5m").has_value());
}

TEST_CASE("validate_candle enforces price and volume invariants") {
    Candle c{1000, 10.0, 12.0, 9.0, 11.0, 500.0};
    CHECK_NOTHROW(validate_candle(c, "row 1"));

    SUBCASE("flat candle is legal") {
        Candle flat{1000, 10.0, 10.0, 10.0, 10.0, 0.0};
        CHECK_NOTHROW(validate_candle(flat, "row 1"));
    }
    SUBCASE("high below low") {
        c.high = 8.0;
        CHECK_THROWS_AS(validate_candle(c, "row 1"), ValidationError);
    }
    SUBCASE("open outside range") {
        c.open = 13.0;
        CHECK_THROWS_AS(validate_candle(c, "row 1"), ValidationError);
    }
    SUBCASE("close outside range") {
        c.close = 8.5;
        CHECK_THROWS_AS(validate_candle(c, "row 1"), ValidationError);
    }
    SUBCASE("non-positive price") {
        c.low = 0.0;
        c.open = c.close = c.high = 0.0;
        CHECK_THROWS_AS(validate_candle(c, "row 1"), ValidationError);
    }
    SUBCASE("negative volume") {
        c.volume = -1.0;
        CHECK_THROWS_AS(validate_candle(c, "row 1"), ValidationError);
    }
}

TEST_CASE("validate_series checks ordering and spacing") {
    CandleSeries s = series_from_closes({100, 101, 102, 103});
    CHECK_NOTHROW(validate_series(s));

    SUBCASE("weekend-sized gap is an exact multiple and passes") {
        s.candles[3].timestamp = s.candles[2].timestamp + 3 * 86400;
        CHECK_NOTHROW(validate_series(s));
    }
    SUBCASE("duplicate timestamp") {
        s.candles[2].timestamp = s.candles[1].timestamp;
        CHECK_THROWS_AS(validate_series(s), ValidationError);
    }
    SUBCASE("out of order") {
        std::swap(s.candles[1].timestamp, s.candles[2].timestamp);
        CHECK_THROWS_AS(validate_series(s), ValidationError);
    }
    SUBCASE("gap not a multiple of the interval") {
        s.candles[3].timestamp += 3600;
        CHECK_THROWS_AS(validate_series(s), ValidationError);
    }
}

TEST_CASE("slice keeps both endpoints") {
    CandleSeries s = series_from_closes({100, 101, 102, 103, 104});
    const std::int64_t t0 = s.candles[1].timestamp;
    const std::int64_t t1 = s.candles[3].timestamp;

    CandleSeries cut = slice(s, t0, t1);
    REQUIRE(cut.size() == 3);
    CHECK(cut.candles.front().timestamp == t0);
    CHECK(cut.candles.back().timestamp == t1);
    CHECK(cut.symbol == s.symbol);

    CHECK(slice(s, t1 + 86400 * 10, t1 + 86400 * 20).empty());
    CHECK_THROWS_AS(slice(s, t1, t0), ValidationError);
}

TEST_CASE("iso date parsing and formatting") {
    CHECK(parse_iso_date("2023-09-01") == 1693526400);
    CHECK(parse_iso_date("1970-01-01") == 0);
    CHECK(parse_iso_date("2020-02-29") == 1582934400); // leap day
    CHECK(format_iso_date(1693526400) == "2023-09-01");
    CHECK(format_compact_date(1693526400) == "20230901");

    for (std::int64_t ts : {0L, 951782400L, 1693526400L, 4102444800L}) {
        CHECK(parse_iso_date(format_iso_date(ts)) == ts);
    }

    CHECK_THROWS_AS(parse_iso_date("2023-13-01"), ParseError);
    CHECK_THROWS_AS(parse_iso_date("2023-02-30"), ParseError);
    CHECK_THROWS_AS(parse_iso_date("not-a-date"), ParseError);
    CHECK_THROWS_AS(parse_iso_date("2023/09/01"), ParseError);
    CHECK_THROWS_AS(parse_iso_date(""), ParseError);
}

TEST_SUITE_END();
