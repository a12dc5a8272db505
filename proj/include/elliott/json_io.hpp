#pragma once

#include <nlohmann/json.hpp>

#include "elliott/candle.hpp"
#include "elliott/forecast.hpp"
#include "elliott/learn.hpp"
#include "elliott/pipeline.hpp"
#include "elliott/swings.hpp"
#include "elliott/waves.hpp"

// JSON codecs for the persisted types. to_json produces the canonical layout
// (alphabetical keys when dumped); from_json validates required fields and
// throws ParseError on anything malformed, which store readers turn into
// skipped lines.

namespace elliott {

nlohmann::json to_json(const Candle& v);
nlohmann::json to_json(const SwingPoint& v);
nlohmann::json to_json(const Wave& v);
nlohmann::json to_json(const RuleReport& v);
nlohmann::json to_json(const FibAssessment& v);
nlohmann::json to_json(const ImpulsePattern& v);
nlohmann::json to_json(const CorrectivePattern& v);
nlohmann::json to_json(const Forecast& v);
nlohmann::json to_json(const StateKey& v);
nlohmann::json to_json(const KnowledgeRecord& v);
nlohmann::json to_json(const CandleSeries& v);
nlohmann::json to_json(const AgentMessage& v);
nlohmann::json to_json(const ForecastPair& v);
nlohmann::json to_json(const PatternStats& v);
nlohmann::json to_json(const AnalysisBundle& v);

void from_json(const nlohmann::json& j, Candle& v);
void from_json(const nlohmann::json& j, SwingPoint& v);
void from_json(const nlohmann::json& j, Wave& v);
void from_json(const nlohmann::json& j, RuleReport& v);
void from_json(const nlohmann::json& j, FibAssessment& v);
void from_json(const nlohmann::json& j, ImpulsePattern& v);
void from_json(const nlohmann::json& j, CorrectivePattern& v);
void from_json(const nlohmann::json& j, Forecast& v);
void from_json(const nlohmann::json& j, StateKey& v);
void from_json(const nlohmann::json& j, KnowledgeRecord& v);
void from_json(const nlohmann::json& j, CandleSeries& v);
void from_json(const nlohmann::json& j, AgentMessage& v);
void from_json(const nlohmann::json& j, ForecastPair& v);
void from_json(const nlohmann::json& j, PatternStats& v);
void from_json(const nlohmann::json& j, AnalysisBundle& v);

} // namespace elliott
