// Regenerates the committed CSV fixtures. Deterministic: fixed seeds, fixed
// leg tables, prices rounded to 4 decimals (pivot margins are orders of
// magnitude wider than the rounding step).
//
//   gen_fixtures [out_dir]     default out_dir: fixtures
//
// aapl_daily.csv   1000 rows; the final 366 rows (2023-09-01..2024-08-31)
//                  carry one clean 1-2-3-4-5 impulse with an A-B-C zigzag
//                  and a partial recovery, preceded by an unstructured walk.
// rr?_daily.csv    six symbols alternating a high-conformance motif whose
//                  continuation holds with a low-conformance motif whose
//                  continuation fails, so learned state statistics separate
//                  the two cleanly.
// hr?_1h.csv       two hourly symbols with the same alternating regime.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "elliott/candle.hpp"
#include "elliott/market_data.hpp"
#include "elliott/rng.hpp"
#include "elliott/synth.hpp"

using namespace elliott;

namespace {

struct Leg {
    double target;
    int count;
};

void append_legs(CandleSeries& series, const std::vector<Leg>& legs, double noise, double volume,
                 Rng& rng) {
    for (const Leg& leg : legs) append_leg(series, leg.target, leg.count, noise, volume, rng);
}

double round4(double x) {
    return std::round(x * 10000.0) / 10000.0;
}

void round_prices(CandleSeries& series) {
    for (Candle& c : series.candles) {
        c.open = round4(c.open);
        c.high = round4(c.high);
        c.low = round4(c.low);
        c.close = round4(c.close);
    }
}

// One high-conformance impulse whose post-pattern leg retraces almost exactly
// the wave-5 length (ratios 0.5 / 1.618 / 0.382 / 1.0), then a transition to
// the next scale. Appends 47 candles; returns the new scale.
double good_motif(CandleSeries& series, double s, double noise, double volume, Rng& rng) {
    const double w1 = 0.08 * s;
    const double g1 = s + w1;
    const double g2 = g1 - 0.5 * w1;
    const double g3 = g2 + 1.618 * w1;
    const double g4 = g3 - 0.382 * (1.618 * w1);
    const double g5 = g4 + w1;
    const double next = g5 - 1.025 * w1; // follow-up leg ratio 1.025, inside tolerance
    append_legs(series,
                {{g1, 8}, {g2, 5}, {g3, 10}, {g4, 6}, {g5, 10}, {next, 8}},
                noise, volume, rng);
    return next;
}

// One low-conformance impulse (ratios 0.75 / 1.3 / 0.25 / 0.382, only the
// last near a canonical level) that collapses instead of continuing.
// Appends 43 candles; returns the new scale.
double bad_motif(CandleSeries& series, double s, double noise, double volume, Rng& rng) {
    const double w1 = 0.08 * s;
    const double b1 = s + w1;
    const double b2 = b1 - 0.75 * w1;
    const double b3 = b2 + 1.3 * w1;
    const double b4 = b3 - 0.25 * (1.3 * w1);
    const double b5 = b4 + 0.382 * w1;
    const double next = 0.95 * s;
    append_legs(series, {{b1, 8}, {b2, 5}, {b3, 10}, {b4, 6}, {b5, 2}, {next, 12}}, noise,
                volume, rng);
    return next;
}

CandleSeries make_regime_series(const std::string& symbol, Interval interval,
                                std::int64_t start_ts, double start_price, int pairs,
                                std::uint64_t seed) {
    CandleSeries series;
    series.symbol = symbol;
    series.interval = interval;
    Rng rng(seed);
    append_pivot_candle(series, start_ts, start_price, 3e6);
    double s = start_price;
    for (int i = 0; i < pairs; ++i) {
        s = good_motif(series, s, 0.12, 3e6, rng);
        s = bad_motif(series, s, 0.12, 3e6, rng);
    }
    round_prices(series);
    return series;
}

CandleSeries make_aapl() {
    CandleSeries series;
    series.symbol = "AAPL";
    series.interval = Interval::Daily;
    Rng rng(7);
    const std::int64_t start_ts = parse_iso_date("2023-09-01") - 634 * std::int64_t(86400);
    append_pivot_candle(series, start_ts, 120.0, 4e7);
    // 633 candles of background walk ending on 160 the day before the window.
    append_legs(series,
                {{138, 90}, {131, 55}, {150, 95}, {141, 60}, {163, 110}, {152, 74}, {160, 149}},
                0.8, 4e7, rng);
    // The case-study year: impulse 160-196-178-236-214-250, zigzag to 212/225/205,
    // recovery into a 232 close. 366 candles, 2023-09-01 through 2024-08-31.
    append_legs(series,
                {{196, 58},
                 {178, 29},
                 {236, 70},
                 {214, 35},
                 {250, 47},
                 {212, 40},
                 {225, 20},
                 {205, 28},
                 {232, 39}},
                0.8, 4e7, rng);
    round_prices(series);
    return series;
}

void write_fixture(const std::filesystem::path& dir, const std::string& name,
                   const CandleSeries& series) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    const std::string csv = serialize_csv(series);
    if (!out || !(out << csv) || !out.flush()) {
        throw std::runtime_error("cannot write " + path.string());
    }
    std::cout << name << ": " << series.size() << " rows\n";
}

} // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);

    write_fixture(dir, "aapl_daily.csv", make_aapl());

    const std::int64_t daily_start = parse_iso_date("2015-01-01");
    const char* daily_symbols[] = {"RRA", "RRB", "RRC", "RRD", "RRE", "RRF"};
    const double daily_prices[] = {50, 64, 80, 44, 96, 58};
    for (int i = 0; i < 6; ++i) {
        const auto series =
            make_regime_series(daily_symbols[i], Interval::Daily, daily_start, daily_prices[i],
                               34, 101 + std::uint64_t(i));
        std::string name = daily_symbols[i];
        for (char& c : name) c = char(std::tolower(static_cast<unsigned char>(c)));
        write_fixture(dir, name + "_daily.csv", series);
    }

    const std::int64_t hourly_start = parse_iso_date("2019-01-01");
    const char* hourly_symbols[] = {"HRA", "HRB"};
    const double hourly_prices[] = {80, 72};
    for (int i = 0; i < 2; ++i) {
        const auto series =
            make_regime_series(hourly_symbols[i], Interval::Hourly, hourly_start,
                               hourly_prices[i], 34, 201 + std::uint64_t(i));
        std::string name = hourly_symbols[i];
        for (char& c : name) c = char(std::tolower(static_cast<unsigned char>(c)));
        write_fixture(dir, name + "_1h.csv", series);
    }
    return 0;
}
