#pragma once

#include <span>
#include <vector>

#include "tradecast/errors.hpp"

namespace tradecast {

/// An annual time series: equally spaced observations labelled by the
/// calendar year of the first one.
struct Series {
    std::vector<double> values;
    int start_year = 0;

    Series() = default;
    Series(std::vector<double> v, int year) : values(std::move(v)), start_year(year) {}

    std::size_t size() const { return values.size(); }
    int year_at(std::size_t i) const { return start_year + static_cast<int>(i); }
    int last_year() const { return start_year + static_cast<int>(values.size()) - 1; }

    /// Observations restricted to [from, to] inclusive.
    Series window(int from, int to) const;
};

/// d-th difference. d = 0 returns the series unchanged; start_year advances by d.
Series difference(const Series& s, int d);

double mean(std::span<const double> x);

/// Sample variance with the df-corrected (n-1) divisor.
double variance(std::span<const double> x);

/// Mean-centred sample autocorrelations r_1..r_max_lag with the lag-0 (biased)
/// denominator. Throws ConstantSeries when the series has zero variance.
std::vector<double> sample_acf(std::span<const double> x, int max_lag);

}  // namespace tradecast
