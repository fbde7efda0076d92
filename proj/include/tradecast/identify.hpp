#pragma once

#include <utility>
#include <vector>

#include "tradecast/arima.hpp"
#include "tradecast/series.hpp"

namespace tradecast {

/// One method's statistic grid. Rows index the AR test order m = 0..p_max,
/// columns the MA order j = 0..q_max. Entries that cannot be computed on the
/// available sample are NaN.
struct IdentificationTable {
    IdMethod method = IdMethod::ESACF;
    std::vector<std::vector<double>> grid;

    int p_max() const { return static_cast<int>(grid.size()) - 1; }
    int q_max() const { return grid.empty() ? -1 : static_cast<int>(grid[0].size()) - 1; }
};

/// Extended sample autocorrelation function (iterated AR regressions).
/// Candidates are, per AR row, the smallest MA order whose zero triangle is
/// insignificant at the two-standard-error band 2/sqrt(n-m-j).
std::pair<IdentificationTable, std::vector<OrderCandidate>> esacf(const Series& series,
                                                                  int p_max = 5, int q_max = 5);

/// Smallest canonical correlation test statistics, chi-square(1) scaled.
/// Candidates are, per AR row, the smallest MA order whose lower-right
/// rectangle of statistics is insignificant at alpha = 0.05.
std::pair<IdentificationTable, std::vector<OrderCandidate>> scan(const Series& series,
                                                                 int p_max = 5, int q_max = 5);

/// Minimum information criterion grid from a long-AR prefit:
/// BIC(p,q) = ln(sigma2_hat) + (p+q)*ln(n)/n. Returns the grid and its argmin.
std::pair<IdentificationTable, OrderCandidate> minic(const Series& series, int p_max = 5,
                                                     int q_max = 5);

/// Union of the three methods' candidates, deduplicated on (p,q), always
/// containing (0,0). The series must already be differenced d times; d is
/// carried only for bookkeeping.
std::vector<OrderCandidate> tentative_orders(const Series& series, int d, int p_max = 5,
                                             int q_max = 5);

}  // namespace tradecast
