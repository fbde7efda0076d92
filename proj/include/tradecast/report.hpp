#pragma once

#include <string>
#include <vector>

#include "tradecast/adf.hpp"
#include "tradecast/arima.hpp"
#include "tradecast/identify.hpp"
#include "tradecast/nrca.hpp"
#include "tradecast/outliers.hpp"

namespace tradecast {

enum class TableFormat { Csv, Txt };

/// Everything the pipeline computed for one revealed category.
struct CategoryResult {
    std::string commodity;
    Series train;                          // modeling units, training window
    DifferencingDecision differencing;
    std::vector<OrderCandidate> candidates;
    FittedModel model;
    DiagnosticsResult diagnostics;
    ForecastResult forecasts;
    std::vector<OutlierEvent> events;
    bool has_actual = false;
    double actual_test = 0.0;              // test-year value, modeling units
    double percent_error = 0.0;
};

std::string method_name(IdMethod m);

// Table writers. Each returns the emitted text and, when `path` is not
// empty, also writes it there. Column headers are fixed and golden-tested.
std::string write_nrca_table(const std::vector<NrcaSeries>& series, double display_scale,
                             TableFormat fmt, const std::string& path = "");
std::string write_adf_level_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                  const std::string& path = "");
std::string write_adf_diff_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                 const std::string& path = "");
std::string write_identification_table(const std::vector<CategoryResult>& results,
                                       TableFormat fmt, const std::string& path = "");
std::string write_order_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                              const std::string& path = "");
std::string write_diagnostics_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                    const std::string& path = "");
std::string write_forecast_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                 const std::string& path = "");
std::string write_two_year_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                 const std::string& path = "");
std::string write_outlier_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                const std::string& path = "");

}  // namespace tradecast
