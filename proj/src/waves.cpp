#include "elliott/waves.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "elliott/errors.hpp"

namespace elliott {

std::string_view direction_name(Direction d) {
    return d == Direction::Up ? "up" : "down";
}

std::optional<Direction> direction_from_name(std::string_view name) {
    if (name == "up") return Direction::Up;
    if (name == "down") return Direction::Down;
    return std::nullopt;
}

std::string_view completeness_code(Completeness c) {
    return c == Completeness::Incomplete4 ? "impulse4" : "impulse5";
}

std::optional<Completeness> completeness_from_code(std::string_view code) {
    if (code == "impulse4") return Completeness::Incomplete4;
    if (code == "impulse5") return Completeness::Complete5;
    return std::nullopt;
}

std::string_view completeness_display(Completeness c) {
    return c == Completeness::Incomplete4 ? "1-2-3-4" : "1-2-3-4-5";
}

std::string_view wave_label_name(WaveLabel label) {
    switch (label) {
        case WaveLabel::W1: return "1";
        case WaveLabel::W2: return "2";
        case WaveLabel::W3: return "3";
        case WaveLabel::W4: return "4";
        case WaveLabel::W5: return "5";
        case WaveLabel::WA: return "A";
        case WaveLabel::WB: return "B";
        case WaveLabel::WC: return "C";
    }
    return "?";
}

double fib_level(double high, double low, double ratio) {
    if (!(high > low)) throw ValidationError("fib_level: high must exceed low");
    if (!(ratio >= 0.0)) throw ValidationError("fib_level: ratio must be non-negative");
    return high - ratio * (high - low);
}

double ratio_score(double ratio, const std::vector<double>& canonical, double tolerance) {
    if (canonical.empty() || !(tolerance > 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (double c : canonical) best = std::min(best, std::abs(ratio - c));
    return std::max(0.0, 1.0 - best / tolerance);
}

namespace {

// Pivots must alternate High/Low with strictly increasing candle indices and
// each leg moving toward its end kind. Detector output satisfies this by
// construction; hand-built sequences are checked.
void validate_alternation(std::span<const SwingPoint> pivots) {
    for (std::size_t i = 1; i < pivots.size(); ++i) {
        const SwingPoint& a = pivots[i - 1];
        const SwingPoint& b = pivots[i];
        if (a.kind == b.kind) throw ValidationError("swing sequence: pivots must alternate");
        if (a.candle_index >= b.candle_index) {
            throw ValidationError("swing sequence: candle indices must be strictly increasing");
        }
        const bool rises = b.kind == SwingKind::High;
        if (rises ? !(b.price > a.price) : !(b.price < a.price)) {
            throw ValidationError("swing sequence: leg price does not move toward its pivot");
        }
    }
}

std::vector<Wave> build_waves(std::span<const SwingPoint> pivots, bool corrective) {
    static constexpr WaveLabel impulse_labels[] = {WaveLabel::W1, WaveLabel::W2, WaveLabel::W3,
                                                   WaveLabel::W4, WaveLabel::W5};
    static constexpr WaveLabel corrective_labels[] = {WaveLabel::WA, WaveLabel::WB, WaveLabel::WC};
    std::vector<Wave> waves;
    waves.reserve(pivots.size() - 1);
    for (std::size_t i = 1; i < pivots.size(); ++i) {
        const WaveLabel label = corrective ? corrective_labels[i - 1] : impulse_labels[i - 1];
        waves.push_back(Wave{label, pivots[i - 1], pivots[i]});
    }
    return waves;
}

FibAssessment assess_slots(const std::vector<std::optional<double>>& slots, const WaveConfig& cfg) {
    FibAssessment fib;
    double sum = 0.0;
    int present = 0;
    const auto score = [&](const std::optional<double>& r) {
        if (!r) return;
        sum += ratio_score(*r, cfg.canonical_ratios, cfg.fib_tolerance);
        ++present;
    };
    fib.ratio_w2_w1 = slots[0];
    fib.ratio_w3_w1 = slots[1];
    fib.ratio_w4_w3 = slots[2];
    fib.ratio_w5_w1 = slots[3];
    for (const auto& r : slots) score(r);
    fib.conformance_score = present > 0 ? sum / present : 0.0;
    return fib;
}

std::optional<ImpulsePattern> try_impulse_window(std::span<const SwingPoint> w,
                                                 Completeness completeness, const WaveConfig& cfg) {
    const Direction dir = w[0].kind == SwingKind::Low ? Direction::Up : Direction::Down;
    const bool up = dir == Direction::Up;
    const auto beyond = [&](double a, double b) { return up ? a > b : a < b; };

    RuleReport rules;
    rules.rule2_no_full_retrace = beyond(w[2].price, w[0].price);
    rules.rule4_no_overlap = beyond(w[4].price, w[1].price);

    const double len1 = std::abs(w[1].price - w[0].price);
    const double len3 = std::abs(w[3].price - w[2].price);
    if (completeness == Completeness::Complete5) {
        const double len5 = std::abs(w[5].price - w[4].price);
        rules.rule3_not_shortest = !(len3 < len1 && len3 < len5);
        rules.w3_dominance = true;
    } else {
        rules.rule3_not_shortest = true;
        rules.w3_dominance = !cfg.require_w3_dominance || len3 > len1;
    }
    if (!rules.all()) return std::nullopt;

    ImpulsePattern pattern;
    pattern.direction = dir;
    pattern.completeness = completeness;
    pattern.waves = build_waves(w, false);
    pattern.rules = rules;

    std::vector<std::optional<double>> slots(4);
    slots[0] = pattern.waves[1].price_length() / len1;
    slots[1] = len3 / len1;
    slots[2] = pattern.waves[3].price_length() / len3;
    if (completeness == Completeness::Complete5) slots[3] = pattern.waves[4].price_length() / len1;
    pattern.fib = assess_slots(slots, cfg);
    return pattern;
}

std::optional<CorrectivePattern> try_corrective_window(std::span<const SwingPoint> w,
                                                       const WaveConfig& cfg) {
    const Direction dir = w[0].kind == SwingKind::High ? Direction::Down : Direction::Up;
    const bool down = dir == Direction::Down;
    // B must stay short of A's origin, C must travel beyond A's end.
    const auto holds = down ? (w[2].price < w[0].price && w[3].price < w[1].price)
                            : (w[2].price > w[0].price && w[3].price > w[1].price);
    if (!holds) return std::nullopt;

    CorrectivePattern pattern;
    pattern.direction = dir;
    pattern.waves = build_waves(w, true);

    const double len_a = pattern.waves[0].price_length();
    std::vector<std::optional<double>> slots(4);
    slots[0] = pattern.waves[1].price_length() / len_a;
    slots[1] = pattern.waves[2].price_length() / len_a;
    pattern.fib = assess_slots(slots, cfg);
    return pattern;
}

} // namespace

FibAssessment assess_fibonacci(const std::vector<Wave>& waves, const WaveConfig& config) {
    if (waves.empty()) throw ValidationError("assess_fibonacci: no waves");
    std::vector<std::optional<double>> slots(4);
    if (waves.front().label == WaveLabel::WA) {
        if (waves.size() != 3) throw ValidationError("assess_fibonacci: corrective needs 3 waves");
        const double len_a = waves[0].price_length();
        slots[0] = waves[1].price_length() / len_a;
        slots[1] = waves[2].price_length() / len_a;
    } else {
        if (waves.size() != 4 && waves.size() != 5) {
            throw ValidationError("assess_fibonacci: impulse needs 4 or 5 waves");
        }
        const double len1 = waves[0].price_length();
        const double len3 = waves[2].price_length();
        slots[0] = waves[1].price_length() / len1;
        slots[1] = len3 / len1;
        slots[2] = waves[3].price_length() / len3;
        if (waves.size() == 5) slots[3] = waves[4].price_length() / len1;
    }
    return assess_slots(slots, config);
}

std::vector<ImpulsePattern> find_impulse(const SwingSequence& swings, Completeness completeness,
                                         const WaveConfig& config) {
    validate_alternation(swings);
    const std::size_t window = completeness == Completeness::Complete5 ? 6 : 5;
    std::vector<ImpulsePattern> out;
    if (swings.size() < window) return out;
    for (std::size_t start = 0; start + window <= swings.size(); ++start) {
        const std::span<const SwingPoint> w{swings.data() + start, window};
        if (auto pattern = try_impulse_window(w, completeness, config)) {
            out.push_back(std::move(*pattern));
        }
    }
    return out;
}

std::vector<CorrectivePattern> find_corrective(const SwingSequence& swings,
                                               const std::optional<ImpulsePattern>& preceding,
                                               const WaveConfig& config) {
    validate_alternation(swings);
    std::vector<CorrectivePattern> out;
    if (swings.size() < 4) return out;
    for (std::size_t start = 0; start + 4 <= swings.size(); ++start) {
        const std::span<const SwingPoint> w{swings.data() + start, 4};
        if (preceding) {
            if (w[0] != preceding->final_pivot()) continue;
        }
        auto pattern = try_corrective_window(w, config);
        if (!pattern) continue;
        if (preceding && pattern->direction != opposite(preceding->direction)) continue;
        out.push_back(std::move(*pattern));
    }
    return out;
}

} // namespace elliott
