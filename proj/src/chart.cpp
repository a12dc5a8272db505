#include "elliott/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "elliott/errors.hpp"

namespace elliott {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Minimal XML escaping for text nodes we emit.
std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Frame {
    double left = 70.0, right = 1140.0, top = 60.0, bottom = 600.0;
    double pmin = 0.0, pmax = 1.0;
    std::size_t count = 1;

    double x(double index) const {
        return left + (index + 0.5) * (right - left) / double(count);
    }
    double y(double price) const {
        return top + (pmax - price) / (pmax - pmin) * (bottom - top);
    }
    double body_width() const {
        return std::max(1.0, 0.6 * (right - left) / double(count));
    }
};

void check_pivot(const SwingPoint& p, std::size_t n, const char* what) {
    if (p.candle_index >= n) {
        throw RenderError(std::string(what) + " pivot at candle " + std::to_string(p.candle_index) +
                          " lies outside the series");
    }
}

void draw_pattern_waves(std::string& svg, const Frame& f, const std::vector<Wave>& waves,
                        const char* color, std::size_t n) {
    if (waves.empty()) return;
    std::string points;
    check_pivot(waves.front().start, n, "pattern");
    points += fmt(f.x(double(waves.front().start.candle_index))) + "," +
              fmt(f.y(waves.front().start.price));
    for (const Wave& w : waves) {
        check_pivot(w.end, n, "pattern");
        points += " " + fmt(f.x(double(w.end.candle_index))) + "," + fmt(f.y(w.end.price));
    }
    svg += "  <polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (const Wave& w : waves) {
        const bool high = w.end.kind == SwingKind::High;
        const double tx = f.x(double(w.end.candle_index));
        const double ty = f.y(w.end.price) + (high ? -8.0 : 16.0);
        svg += "  <text class=\"wave-label\" x=\"" + fmt(tx) + "\" y=\"" + fmt(ty) +
               "\" text-anchor=\"middle\" font-size=\"13\" fill=\"" + color + "\">" +
               std::string(wave_label_name(w.label)) + "</text>\n";
    }
}

void draw_level(std::string& svg, const Frame& f, double x0, double price, const char* color,
                const char* dash, const std::string& label) {
    const double y = f.y(price);
    svg += "  <line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(f.right) + "\" y2=\"" +
           fmt(y) + "\" stroke=\"" + color + "\" stroke-width=\"1\" stroke-dasharray=\"" + dash +
           "\"/>\n";
    svg += "  <text x=\"" + fmt(f.right + 6.0) + "\" y=\"" + fmt(y + 4.0) +
           "\" font-size=\"11\" fill=\"" + color + "\">" + escape(label) + "</text>\n";
}

} // namespace

std::string render_chart(const AnalysisBundle& bundle) {
    const CandleSeries& series = bundle.series;
    if (series.empty()) throw RenderError("empty series");
    const std::size_t n = series.size();

    Frame f;
    f.count = n;
    f.pmin = series.at(0).low;
    f.pmax = series.at(0).high;
    for (const Candle& c : series.candles) {
        f.pmin = std::min(f.pmin, c.low);
        f.pmax = std::max(f.pmax, c.high);
    }
    for (const ForecastPair& pair : bundle.forecasts) {
        for (double level : {pair.raw.entry, pair.raw.primary_target, pair.raw.stop_loss}) {
            f.pmin = std::min(f.pmin, level);
            f.pmax = std::max(f.pmax, level);
        }
        if (pair.raw.secondary_target) {
            f.pmin = std::min(f.pmin, *pair.raw.secondary_target);
            f.pmax = std::max(f.pmax, *pair.raw.secondary_target);
        }
    }
    const double pad = (f.pmax - f.pmin) * 0.04;
    f.pmin -= pad > 0.0 ? pad : 1.0;
    f.pmax += pad > 0.0 ? pad : 1.0;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1280\" height=\"640\" "
           "viewBox=\"0 0 1280 640\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"1280\" height=\"640\" fill=\"#ffffff\"/>\n";
    svg += "  <text x=\"70\" y=\"30\" font-size=\"16\" fill=\"#222222\">" +
           escape(bundle.run_id.empty() ? bundle.symbol : bundle.run_id) + "</text>\n";
    svg += "  <rect x=\"" + fmt(f.left) + "\" y=\"" + fmt(f.top) + "\" width=\"" +
           fmt(f.right - f.left) + "\" height=\"" + fmt(f.bottom - f.top) +
           "\" fill=\"none\" stroke=\"#cccccc\"/>\n";

    // Candles.
    const double half = f.body_width() / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Candle& c = series.at(i);
        const double x = f.x(double(i));
        const bool up = c.close >= c.open;
        const char* color = up ? "#2e7d32" : "#c62828";
        svg += "  <line x1=\"" + fmt(x) + "\" y1=\"" + fmt(f.y(c.high)) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(f.y(c.low)) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        const double top = f.y(std::max(c.open, c.close));
        const double height = std::max(1.0, f.y(std::min(c.open, c.close)) - top);
        svg += "  <rect x=\"" + fmt(x - half) + "\" y=\"" + fmt(top) + "\" width=\"" +
               fmt(half * 2.0) + "\" height=\"" + fmt(height) + "\" fill=\"" + color + "\"/>\n";
    }

    // Swing polyline.
    if (bundle.swings.size() >= 2) {
        std::string points;
        for (const SwingPoint& p : bundle.swings) {
            check_pivot(p, n, "swing");
            if (!points.empty()) points += ' ';
            points += fmt(f.x(double(p.candle_index))) + "," + fmt(f.y(p.price));
        }
        svg += "  <polyline fill=\"none\" stroke=\"#9e9e9e\" stroke-width=\"1\" "
               "stroke-dasharray=\"2,2\" points=\"" +
               points + "\"/>\n";
    }

    for (const ImpulsePattern& p : bundle.patterns) draw_pattern_waves(svg, f, p.waves, "#1565c0", n);
    for (const CorrectivePattern& p : bundle.correctives) {
        draw_pattern_waves(svg, f, p.waves, "#ef6c00", n);
    }

    if (!bundle.forecasts.empty()) {
        const Forecast& fc = bundle.forecasts.front().raw;
        const Forecast& adj = bundle.forecasts.front().adjusted;
        const double x0 = f.x(double(std::min<std::size_t>(fc.issued_at_index, n - 1)));
        draw_level(svg, f, x0, fc.entry, "#455a64", "6,3", "entry " + fmt(fc.entry));
        draw_level(svg, f, x0, fc.primary_target, "#2e7d32", "6,3",
                   "target " + fmt(fc.primary_target));
        if (fc.secondary_target) {
            draw_level(svg, f, x0, *fc.secondary_target, "#2e7d32", "2,3",
                       "target 2 " + fmt(*fc.secondary_target));
        }
        draw_level(svg, f, x0, fc.stop_loss, "#c62828", "6,3", "stop " + fmt(fc.stop_loss));
        svg += "  <text x=\"70\" y=\"48\" font-size=\"13\" fill=\"#455a64\">signal: " +
               std::string(signal_name(adj.signal)) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace elliott
