#pragma once

#include <string>

#include "elliott/pipeline.hpp"

namespace elliott {

// Deterministic SVG candlestick chart for a bundle: candles, the swing
// polyline, one label per pattern wave, and the first forecast's levels.
// Equal bundles render byte-identical documents. Pattern pivots outside the
// bundle's series raise RenderError.
std::string render_chart(const AnalysisBundle& bundle);

} // namespace elliott
