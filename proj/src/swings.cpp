#include "elliott/swings.hpp"

#include "elliott/errors.hpp"

namespace elliott {

SwingDetector::SwingDetector(double threshold) : threshold_(threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0)) {
        throw ValidationError("swing threshold must lie in (0, 1)");
    }
}

void SwingDetector::confirm(SwingPoint pivot, std::size_t at_index, double opposite_extreme) {
    confirmed_.push_back(pivot);
    const SwingKind next_kind = pivot.kind == SwingKind::High ? SwingKind::Low : SwingKind::High;
    trend_ = pivot.kind == SwingKind::High ? Trend::Down : Trend::Up;
    // The confirming candle's opposite extreme seeds the next candidate. When
    // the pivot and the confirming candle coincide, the candidate stays unset
    // so pivot candle indices remain strictly increasing.
    if (at_index == pivot.candle_index) {
        candidate_.reset();
    } else {
        candidate_ = SwingPoint{at_index, opposite_extreme, next_kind};
    }
}

bool SwingDetector::push(const Candle& c) {
    const std::size_t i = count_++;

    if (trend_ == Trend::None) {
        // Track running extremes until the first confirmed reversal. Strict
        // comparisons keep the earliest candle on ties.
        const bool new_high = !run_high_ || c.high > run_high_->price;
        if (new_high) run_high_ = SwingPoint{i, c.high, SwingKind::High};
        const bool new_low = !run_low_ || c.low < run_low_->price;
        if (new_low) run_low_ = SwingPoint{i, c.low, SwingKind::Low};
        // A bar that sets both extremes remembers its direction; printing
        // order inside a bar is otherwise unknowable.
        if (new_high && new_low) run_bar_rising_ = c.close >= c.open;

        const bool down = c.low <= run_high_->price * (1.0 - threshold_);
        const bool up = c.high >= run_low_->price * (1.0 + threshold_);
        if (!down && !up) return false;

        bool pick_high = down;
        if (down && up) {
            // Both reversals fire on one candle: confirm the earlier extreme.
            // When one bar holds both extremes, a rising bar printed its low
            // first, so the Low is the older pivot (and vice versa).
            if (run_high_->candle_index == run_low_->candle_index) {
                pick_high = !run_bar_rising_;
            } else {
                pick_high = run_high_->candle_index < run_low_->candle_index;
            }
        }
        if (pick_high) {
            const SwingPoint pivot = *run_high_;
            if (run_low_ && run_low_->candle_index < pivot.candle_index) {
                confirmed_.push_back(*run_low_); // provisional origin extreme
            }
            if (run_low_ && run_low_->candle_index > pivot.candle_index) {
                trend_ = Trend::Down;
                confirmed_.push_back(pivot);
                candidate_ = *run_low_;
            } else {
                confirm(pivot, i, c.low);
            }
        } else {
            const SwingPoint pivot = *run_low_;
            if (run_high_ && run_high_->candle_index < pivot.candle_index) {
                confirmed_.push_back(*run_high_);
            }
            if (run_high_ && run_high_->candle_index > pivot.candle_index) {
                trend_ = Trend::Up;
                confirmed_.push_back(pivot);
                candidate_ = *run_high_;
            } else {
                confirm(pivot, i, c.high);
            }
        }
        return true;
    }

    // Within a bar the trend-side extreme is assumed to print first, so a bar
    // never confirms a reversal against its own extreme: the candidate pivot
    // must come from an earlier bar. A wide-range bar that extends the trend
    // becomes the candidate and is confirmable from the next bar on.
    if (trend_ == Trend::Up) {
        if (!candidate_ || c.high > candidate_->price) candidate_ = SwingPoint{i, c.high, SwingKind::High};
        if (candidate_->candle_index < i && c.low <= candidate_->price * (1.0 - threshold_)) {
            confirm(*candidate_, i, c.low);
            return true;
        }
        return false;
    }

    // Trend::Down
    if (!candidate_ || c.low < candidate_->price) candidate_ = SwingPoint{i, c.low, SwingKind::Low};
    if (candidate_->candle_index < i && c.high >= candidate_->price * (1.0 + threshold_)) {
        confirm(*candidate_, i, c.high);
        return true;
    }
    return false;
}

SwingSequence SwingDetector::sequence() const {
    if (trend_ == Trend::None) {
        // Nothing confirmed: report the running extremes as provisional
        // endpoints, ordered by candle index. A single-candle (or flat)
        // series reports one Low.
        SwingSequence out;
        if (run_low_ && run_high_) {
            if (run_low_->candle_index == run_high_->candle_index) {
                out.push_back(*run_low_);
            } else if (run_low_->candle_index < run_high_->candle_index) {
                out.push_back(*run_low_);
                out.push_back(*run_high_);
            } else {
                out.push_back(*run_high_);
                out.push_back(*run_low_);
            }
        }
        return out;
    }
    SwingSequence out = confirmed_;
    if (candidate_) out.push_back(*candidate_);
    return out;
}

SwingSequence detect_swings(const CandleSeries& series, double threshold) {
    if (series.empty()) throw ValidationError("detect_swings: empty series");
    SwingDetector detector(threshold);
    for (const Candle& c : series.candles) detector.push(c);
    return detector.sequence();
}

} // namespace elliott
