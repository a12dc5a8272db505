#pragma once

// Independent re-implementations of the wave rules and evaluation criteria,
// written from their definitions rather than from the engine sources, plus
// small builders for series, swing sequences and temp directories. Tests
// compare engine output against these.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elliott/candle.hpp"
#include "elliott/rng.hpp"
#include "elliott/swings.hpp"
#include "elliott/waves.hpp"

namespace testsupport {

using namespace elliott;

// ---- builders -------------------------------------------------------------

// Body-only candles from a close path; each open chains from the prior close.
inline CandleSeries series_from_closes(const std::vector<double>& closes,
                                       Interval interval = Interval::Daily,
                                       std::string symbol = "TEST") {
    CandleSeries s;
    s.symbol = std::move(symbol);
    s.interval = interval;
    const std::int64_t step = interval_seconds(interval);
    std::int64_t ts = 1577836800; // 2020-01-01
    double prev = closes.empty() ? 0.0 : closes.front();
    for (double c : closes) {
        Candle k;
        k.timestamp = ts;
        k.open = prev;
        k.close = c;
        k.high = std::max(k.open, k.close);
        k.low = std::min(k.open, k.close);
        k.volume = 1000.0;
        s.candles.push_back(k);
        ts += step;
        prev = c;
    }
    return s;
}

// Alternating pivot sequence from (candle index, price) pairs.
inline SwingSequence zigzag(SwingKind first, const std::vector<std::pair<std::size_t, double>>& pts) {
    SwingSequence seq;
    SwingKind k = first;
    for (const auto& [index, price] : pts) {
        seq.push_back(SwingPoint{index, price, k});
        k = k == SwingKind::Low ? SwingKind::High : SwingKind::Low;
    }
    return seq;
}

// Random walk with wicks, for property suites. Deterministic per rng state.
inline CandleSeries random_walk(Rng& rng, std::size_t count, double start = 100.0) {
    CandleSeries s;
    s.symbol = "WALK";
    s.interval = Interval::Daily;
    std::int64_t ts = 1262304000; // 2010-01-01
    double close = start;
    double prev = start;
    for (std::size_t i = 0; i < count; ++i) {
        close = std::max(1.0, close + close * 0.04 * (2.0 * rng.unit() - 1.0));
        Candle c;
        c.timestamp = ts;
        c.open = prev;
        c.close = close;
        const double top = std::max(c.open, c.close);
        const double bot = std::min(c.open, c.close);
        c.high = top * (1.0 + 0.01 * rng.unit());
        c.low = bot * (1.0 - 0.01 * rng.unit());
        c.volume = std::floor(1000.0 + 9000.0 * rng.unit());
        s.candles.push_back(c);
        prev = close;
        ts += 86400;
    }
    return s;
}

// Valid random swing sequence: alternating kinds, strictly increasing
// indices, every leg moving toward its pivot. 2..max_pivots points.
inline SwingSequence random_swings(Rng& rng, std::size_t max_pivots) {
    const std::size_t n = 2 + rng.index(max_pivots - 1);
    SwingSequence seq;
    SwingKind kind = rng.index(2) == 0 ? SwingKind::Low : SwingKind::High;
    std::size_t index = rng.index(3);
    double price = 1000.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double leg = 1.0 + 29.0 * rng.unit();
            price += kind == SwingKind::High ? leg : -leg;
        }
        seq.push_back(SwingPoint{index, price, kind});
        kind = kind == SwingKind::Low ? SwingKind::High : SwingKind::Low;
        index += 1 + rng.index(5);
    }
    return seq;
}

// Five-wave pattern carrying just what evaluate_complete reads: kind,
// direction, final pivot and wave-5 length. Earlier legs are placeholders.
inline ImpulsePattern c5_probe(Direction dir, std::size_t fp_index, double fp_price, double len5) {
    const bool up = dir == Direction::Up;
    ImpulsePattern p;
    p.direction = dir;
    p.completeness = Completeness::Complete5;
    const SwingPoint a{fp_index > 5 ? fp_index - 5 : 0, up ? fp_price - len5 : fp_price + len5,
                       up ? SwingKind::Low : SwingKind::High};
    const SwingPoint b{fp_index, fp_price, up ? SwingKind::High : SwingKind::Low};
    for (int i = 0; i < 4; ++i) p.waves.push_back(Wave{WaveLabel(i), a, a});
    p.waves.push_back(Wave{WaveLabel::W5, a, b});
    return p;
}

class TempDir {
public:
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "elliott_test_XXXXXX").string();
        if (mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// ---- rule oracle ----------------------------------------------------------

// Hard-rule check for one consecutive pivot window, stated directly from the
// rule definitions. `count` is 5 (four-wave) or 6 (five-wave).
inline bool oracle_impulse_ok(const SwingPoint* p, std::size_t count, bool require_dominance) {
    const bool five = count == 6;
    const bool up = p[0].kind == SwingKind::Low;
    auto len = [&](std::size_t i) { return std::abs(p[i].price - p[i - 1].price); };
    // wave 2 must stop short of wave 1's origin
    if (up ? p[2].price <= p[0].price : p[2].price >= p[0].price) return false;
    // wave 4 must stay out of wave 1's price territory
    if (up ? p[4].price <= p[1].price : p[4].price >= p[1].price) return false;
    if (five) {
        // wave 3 never the strictly shortest of 1, 3, 5
        if (len(3) < len(1) && len(3) < len(5)) return false;
    } else if (require_dominance) {
        // four-wave windows additionally need wave 3 longer than wave 1
        if (!(len(3) > len(1))) return false;
    }
    return true;
}

// Brute-force enumeration: every consecutive run of the right length that
// passes the rule oracle, as start offsets into the sequence.
inline std::vector<std::size_t> oracle_impulse_starts(const SwingSequence& seq, bool five,
                                                      bool require_dominance) {
    const std::size_t want = five ? 6 : 5;
    std::vector<std::size_t> starts;
    for (std::size_t s = 0; seq.size() >= want && s + want <= seq.size(); ++s) {
        if (oracle_impulse_ok(seq.data() + s, want, require_dominance)) starts.push_back(s);
    }
    return starts;
}

inline double oracle_ratio_score(double ratio, const std::vector<double>& canonical,
                                 double tolerance) {
    double nearest = std::numeric_limits<double>::infinity();
    for (double c : canonical) nearest = std::min(nearest, std::abs(ratio - c));
    return std::max(0.0, 1.0 - nearest / tolerance);
}

// ---- evaluation oracles ---------------------------------------------------

struct Verdict {
    bool correct = false;
    double metric = 0.0;
    std::size_t at = 0;
};

// Directional criterion re-derived from its statement. The summation order
// matches the engine's left-to-right walk so equality is exact; independence
// is in the window bounds and the verdict logic.
inline std::optional<Verdict> oracle_forward_mean(bool up, std::size_t issued, std::size_t n,
                                                  const CandleSeries& s) {
    if (issued + n + 1 > s.size()) return std::nullopt;
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) sum += s.at(issued + k).close;
    const double mean = sum / double(n);
    const double base = s.at(issued).close;
    return Verdict{up ? mean > base : mean < base, mean, issued + n};
}

// Symmetry criterion, brute-force: for each bar the counter-move extreme over
// (final pivot, bar] is recomputed from scratch. A bar confirms only a
// counter-extreme printed by an earlier bar; taking out the impulse extreme
// first settles the outcome as incorrect.
inline std::optional<Verdict> oracle_complete(bool up, std::size_t fp_index, double extreme,
                                              double len5, const CandleSeries& s, double tolerance,
                                              double threshold) {
    for (std::size_t i = fp_index + 1; i < s.size(); ++i) {
        double m = up ? s.at(fp_index + 1).low : s.at(fp_index + 1).high;
        std::size_t held_by = fp_index + 1;
        for (std::size_t k = fp_index + 2; k <= i; ++k) {
            const double v = up ? s.at(k).low : s.at(k).high;
            if (up ? v < m : v > m) {
                m = v;
                held_by = k;
            }
        }
        const double metric = up ? (extreme - m) / len5 : (m - extreme) / len5;
        const bool confirms = up ? s.at(i).high >= m * (1.0 + threshold)
                                 : s.at(i).low <= m * (1.0 - threshold);
        if (held_by < i && confirms) {
            return Verdict{std::abs(metric - 1.0) <= tolerance, metric, i};
        }
        if (up ? s.at(i).high > extreme : s.at(i).low < extreme) {
            return Verdict{false, metric, i};
        }
    }
    return std::nullopt;
}

} // namespace testsupport
