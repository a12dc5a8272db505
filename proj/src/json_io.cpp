#include "elliott/json_io.hpp"

#include "elliott/errors.hpp"

namespace elliott {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

double need_num(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::int64_t need_int(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw ParseError(std::string("field '") + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::uint64_t need_uint(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw ParseError(std::string("field '") + key + "' must be an integer");
    }
    return v.get<std::uint64_t>();
}

std::string need_str(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

bool need_bool(const json& j, const char* key) {
    const json& v = need(j, key);
    if (!v.is_boolean()) throw ParseError(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

template <typename T, typename FromCode>
T need_coded(const json& j, const char* key, FromCode&& from_code) {
    const std::string code = need_str(j, key);
    const auto value = from_code(code);
    if (!value) throw ParseError(std::string("field '") + key + "' has unknown value '" + code + "'");
    return *value;
}

json opt_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> opt_from_json(const json& j, const char* key) {
    const json& v = need(j, key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number or null");
    return v.get<double>();
}

template <typename T>
json vec_to_json(const std::vector<T>& items) {
    json arr = json::array();
    for (const T& item : items) arr.push_back(to_json(item));
    return arr;
}

template <typename T>
void vec_from_json(const json& j, const char* key, std::vector<T>& out) {
    const json& arr = need(j, key);
    if (!arr.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
    out.clear();
    out.reserve(arr.size());
    for (const json& item : arr) {
        T value;
        from_json(item, value);
        out.push_back(std::move(value));
    }
}

std::string_view swing_kind_name(SwingKind k) { return k == SwingKind::High ? "high" : "low"; }

std::optional<SwingKind> swing_kind_from_name(std::string_view name) {
    if (name == "high") return SwingKind::High;
    if (name == "low") return SwingKind::Low;
    return std::nullopt;
}

std::optional<WaveLabel> wave_label_from_name(std::string_view name) {
    for (WaveLabel label : {WaveLabel::W1, WaveLabel::W2, WaveLabel::W3, WaveLabel::W4, WaveLabel::W5,
                            WaveLabel::WA, WaveLabel::WB, WaveLabel::WC}) {
        if (wave_label_name(label) == name) return label;
    }
    return std::nullopt;
}

std::string_view trend_name(TrendBucket t) { return t == TrendBucket::Above ? "above" : "below"; }

std::optional<TrendBucket> trend_from_name(std::string_view name) {
    if (name == "above") return TrendBucket::Above;
    if (name == "below") return TrendBucket::Below;
    return std::nullopt;
}

} // namespace

json to_json(const Candle& v) {
    return json{{"timestamp", v.timestamp}, {"open", v.open},   {"high", v.high},
                {"low", v.low},             {"close", v.close}, {"volume", v.volume}};
}

void from_json(const json& j, Candle& v) {
    v.timestamp = need_int(j, "timestamp");
    v.open = need_num(j, "open");
    v.high = need_num(j, "high");
    v.low = need_num(j, "low");
    v.close = need_num(j, "close");
    v.volume = need_num(j, "volume");
}

json to_json(const SwingPoint& v) {
    return json{{"index", v.candle_index}, {"price", v.price}, {"kind", swing_kind_name(v.kind)}};
}

void from_json(const json& j, SwingPoint& v) {
    v.candle_index = std::size_t(need_int(j, "index"));
    v.price = need_num(j, "price");
    v.kind = need_coded<SwingKind>(j, "kind", swing_kind_from_name);
}

json to_json(const Wave& v) {
    return json{{"label", std::string(wave_label_name(v.label))},
                {"start", to_json(v.start)},
                {"end", to_json(v.end)}};
}

void from_json(const json& j, Wave& v) {
    v.label = need_coded<WaveLabel>(j, "label", wave_label_from_name);
    from_json(need(j, "start"), v.start);
    from_json(need(j, "end"), v.end);
}

json to_json(const RuleReport& v) {
    return json{{"no_full_retrace", v.rule2_no_full_retrace},
                {"no_overlap", v.rule4_no_overlap},
                {"not_shortest", v.rule3_not_shortest},
                {"w3_dominance", v.w3_dominance}};
}

void from_json(const json& j, RuleReport& v) {
    v.rule2_no_full_retrace = need_bool(j, "no_full_retrace");
    v.rule4_no_overlap = need_bool(j, "no_overlap");
    v.rule3_not_shortest = need_bool(j, "not_shortest");
    v.w3_dominance = need_bool(j, "w3_dominance");
}

json to_json(const FibAssessment& v) {
    return json{{"w2_w1", opt_to_json(v.ratio_w2_w1)},
                {"w3_w1", opt_to_json(v.ratio_w3_w1)},
                {"w4_w3", opt_to_json(v.ratio_w4_w3)},
                {"w5_w1", opt_to_json(v.ratio_w5_w1)},
                {"conformance", v.conformance_score}};
}

void from_json(const json& j, FibAssessment& v) {
    v.ratio_w2_w1 = opt_from_json(j, "w2_w1");
    v.ratio_w3_w1 = opt_from_json(j, "w3_w1");
    v.ratio_w4_w3 = opt_from_json(j, "w4_w3");
    v.ratio_w5_w1 = opt_from_json(j, "w5_w1");
    v.conformance_score = need_num(j, "conformance");
}

json to_json(const ImpulsePattern& v) {
    return json{{"direction", std::string(direction_name(v.direction))},
                {"completeness", std::string(completeness_code(v.completeness))},
                {"waves", vec_to_json(v.waves)},
                {"fib", to_json(v.fib)},
                {"rules", to_json(v.rules)}};
}

void from_json(const json& j, ImpulsePattern& v) {
    v.direction = need_coded<Direction>(j, "direction", direction_from_name);
    v.completeness = need_coded<Completeness>(j, "completeness", completeness_from_code);
    vec_from_json(j, "waves", v.waves);
    from_json(need(j, "fib"), v.fib);
    from_json(need(j, "rules"), v.rules);
}

json to_json(const CorrectivePattern& v) {
    return json{{"direction", std::string(direction_name(v.direction))},
                {"waves", vec_to_json(v.waves)},
                {"fib", to_json(v.fib)}};
}

void from_json(const json& j, CorrectivePattern& v) {
    v.direction = need_coded<Direction>(j, "direction", direction_from_name);
    vec_from_json(j, "waves", v.waves);
    from_json(need(j, "fib"), v.fib);
}

json to_json(const Forecast& v) {
    return json{{"symbol", v.symbol},
                {"signal", std::string(signal_name(v.signal))},
                {"direction", std::string(direction_name(v.direction))},
                {"entry", v.entry},
                {"primary_target", v.primary_target},
                {"secondary_target", opt_to_json(v.secondary_target)},
                {"stop_loss", v.stop_loss},
                {"issued_at_index", v.issued_at_index},
                {"issued_at_ts", v.issued_at_ts},
                {"horizon_candles", v.horizon_candles}};
}

void from_json(const json& j, Forecast& v) {
    v.symbol = need_str(j, "symbol");
    v.signal = need_coded<Signal>(j, "signal", signal_from_name);
    v.direction = need_coded<Direction>(j, "direction", direction_from_name);
    v.entry = need_num(j, "entry");
    v.primary_target = need_num(j, "primary_target");
    v.secondary_target = opt_from_json(j, "secondary_target");
    v.stop_loss = need_num(j, "stop_loss");
    v.issued_at_index = std::size_t(need_int(j, "issued_at_index"));
    v.issued_at_ts = need_int(j, "issued_at_ts");
    v.horizon_candles = std::size_t(need_int(j, "horizon_candles"));
}

json to_json(const StateKey& v) {
    return json{{"symbol", v.symbol},
                {"kind", std::string(completeness_code(v.kind))},
                {"direction", std::string(direction_name(v.direction))},
                {"fib_bucket", v.fib_bucket},
                {"trend", std::string(trend_name(v.trend))}};
}

void from_json(const json& j, StateKey& v) {
    v.symbol = need_str(j, "symbol");
    v.kind = need_coded<Completeness>(j, "kind", completeness_from_code);
    v.direction = need_coded<Direction>(j, "direction", direction_from_name);
    v.fib_bucket = int(need_int(j, "fib_bucket"));
    if (v.fib_bucket < 0 || v.fib_bucket > 4) throw ParseError("field 'fib_bucket' out of range");
    v.trend = need_coded<TrendBucket>(j, "trend", trend_from_name);
}

json to_json(const KnowledgeRecord& v) {
    // Flat layout: the state key fields sit beside the statistics.
    json j = to_json(v.key);
    j["interval"] = std::string(interval_code(v.interval));
    j["samples"] = v.samples;
    j["hit_rate"] = v.hit_rate;
    j["mean_forward_return"] = v.mean_forward_return;
    j["q_values"] = v.q_values;
    j["trained_through"] = v.trained_through;
    j["schema_version"] = v.schema_version;
    return j;
}

void from_json(const json& j, KnowledgeRecord& v) {
    const auto version = need_int(j, "schema_version");
    if (version != 1) {
        throw ParseError("unsupported schema_version " + std::to_string(version));
    }
    v.schema_version = int(version);
    from_json(j, v.key);
    v.interval = need_coded<Interval>(j, "interval", interval_from_code);
    v.samples = need_int(j, "samples");
    v.hit_rate = need_num(j, "hit_rate");
    v.mean_forward_return = need_num(j, "mean_forward_return");
    const json& q = need(j, "q_values");
    if (!q.is_array() || q.size() != kActionCount) {
        throw ParseError("field 'q_values' must be an array of 3 numbers");
    }
    for (std::size_t i = 0; i < kActionCount; ++i) {
        if (!q[i].is_number()) throw ParseError("field 'q_values' must be an array of 3 numbers");
        v.q_values[i] = q[i].get<double>();
    }
    v.trained_through = need_int(j, "trained_through");
}

json to_json(const CandleSeries& v) {
    json candles = json::array();
    for (const Candle& c : v.candles) candles.push_back(to_json(c));
    return json{{"symbol", v.symbol},
                {"interval", std::string(interval_code(v.interval))},
                {"candles", std::move(candles)}};
}

void from_json(const json& j, CandleSeries& v) {
    v.symbol = need_str(j, "symbol");
    v.interval = need_coded<Interval>(j, "interval", interval_from_code);
    vec_from_json(j, "candles", v.candles);
}

json to_json(const AgentMessage& v) {
    return json{{"sequence", v.sequence},
                {"from", std::string(role_name(v.from))},
                {"to", std::string(role_name(v.to))},
                {"kind", v.kind},
                {"payload", v.payload}};
}

void from_json(const json& j, AgentMessage& v) {
    v.sequence = need_uint(j, "sequence");
    v.from = need_coded<Role>(j, "from", role_from_name);
    v.to = need_coded<Role>(j, "to", role_from_name);
    v.kind = need_str(j, "kind");
    v.payload = need(j, "payload");
}

json to_json(const ForecastPair& v) {
    return json{{"raw", to_json(v.raw)}, {"adjusted", to_json(v.adjusted)}};
}

void from_json(const json& j, ForecastPair& v) {
    from_json(need(j, "raw"), v.raw);
    from_json(need(j, "adjusted"), v.adjusted);
}

json to_json(const PatternStats& v) {
    return json{{"impulse4", v.impulse4}, {"impulse5", v.impulse5}, {"corrective", v.corrective}};
}

void from_json(const json& j, PatternStats& v) {
    v.impulse4 = std::size_t(need_int(j, "impulse4"));
    v.impulse5 = std::size_t(need_int(j, "impulse5"));
    v.corrective = std::size_t(need_int(j, "corrective"));
}

json to_json(const AnalysisBundle& v) {
    return json{{"run_id", v.run_id},
                {"symbol", v.symbol},
                {"interval", std::string(interval_code(v.interval))},
                {"from_ts", v.from_ts},
                {"to_ts", v.to_ts},
                {"seed", v.seed},
                {"series", to_json(v.series)},
                {"swings", vec_to_json(v.swings)},
                {"stats", to_json(v.stats)},
                {"patterns", vec_to_json(v.patterns)},
                {"correctives", vec_to_json(v.correctives)},
                {"forecasts", vec_to_json(v.forecasts)},
                {"kb_records", vec_to_json(v.kb_records)},
                {"trained_now", v.trained_now}};
}

void from_json(const json& j, AnalysisBundle& v) {
    v.run_id = need_str(j, "run_id");
    v.symbol = need_str(j, "symbol");
    v.interval = need_coded<Interval>(j, "interval", interval_from_code);
    v.from_ts = need_int(j, "from_ts");
    v.to_ts = need_int(j, "to_ts");
    v.seed = need_uint(j, "seed");
    from_json(need(j, "series"), v.series);
    vec_from_json(j, "swings", v.swings);
    from_json(need(j, "stats"), v.stats);
    vec_from_json(j, "patterns", v.patterns);
    vec_from_json(j, "correctives", v.correctives);
    vec_from_json(j, "forecasts", v.forecasts);
    vec_from_json(j, "kb_records", v.kb_records);
    v.trained_now = need_bool(j, "trained_now");
}

} // namespace elliott
