#pragma once

#include <string>
#include <vector>

#include "tradecast/arima.hpp"
#include "tradecast/outliers.hpp"

namespace tradecast {

/// Render one category's history, forecasts with the 95% band, and detected
/// events as an SVG file. Level shifts are drawn as circles, additive
/// outliers as rectangles (class attributes "ls-marker" / "ao-marker").
/// Returns the SVG text.
std::string emit_forecast_plot(const Series& history, const ForecastResult& forecasts,
                               const std::vector<OutlierEvent>& events,
                               const std::string& title, const std::string& path);

}  // namespace tradecast
