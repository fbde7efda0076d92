#pragma once

#include <string>
#include <vector>

#include "tradecast/ingest.hpp"
#include "tradecast/series.hpp"

namespace tradecast {

/// One country-commodity NRCA time series. Values are raw (dimensionless);
/// the x1e6 display scaling belongs to the report layer.
struct NrcaSeries {
    std::string country;
    std::string commodity;
    std::vector<int> years;
    std::vector<double> values;

    Series to_series(double scale = 1.0) const;
};

/// NRCA for one cell: E_j^i/E - (E_j * E^i)/(E * E).
/// Zero exactly when the country's share of commodity j equals its share of
/// total trade.
double nrca_value(const TradePanel& panel, const std::string& country,
                  const std::string& commodity, int year);

/// NRCA across every panel year.
NrcaSeries nrca_series(const TradePanel& panel, const std::string& country,
                       const std::string& commodity);

/// A commodity admitted by the screening rule, with its longest qualifying run.
struct RevealedCategory {
    std::string commodity;
    int run_start = 0;
    int run_length = 0;
    double mean_nrca = 0.0;   // mean over the screening window
};

/// Commodities whose NRCA exceeds `threshold` for at least `min_run`
/// consecutive years inside [window_start, window_end]. Sorted by mean NRCA
/// in the window, descending.
std::vector<RevealedCategory> screen_revealed(const std::vector<NrcaSeries>& series_set,
                                              int window_start, int window_end,
                                              int min_run, double threshold);

}  // namespace tradecast
