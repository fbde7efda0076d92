#include "tradecast/series.hpp"

#include <cmath>
#include <numeric>

namespace tradecast {

Series Series::window(int from, int to) const {
    if (from < start_year || to > last_year() || from > to) {
        throw WindowOutOfRange("window [" + std::to_string(from) + "," + std::to_string(to) +
                               "] not within [" + std::to_string(start_year) + "," +
                               std::to_string(last_year()) + "]");
    }
    std::vector<double> v(values.begin() + (from - start_year),
                          values.begin() + (to - start_year) + 1);
    return Series(std::move(v), from);
}

Series difference(const Series& s, int d) {
    if (d < 0) throw Error("negative differencing order");
    if (static_cast<int>(s.size()) <= d) {
        throw TooShort("cannot take " + std::to_string(d) + " differences of " +
                       std::to_string(s.size()) + " observations");
    }
    Series out = s;
    for (int k = 0; k < d; ++k) {
        std::vector<double> v(out.values.size() - 1);
        for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
            v[i] = out.values[i + 1] - out.values[i];
        }
        out.values = std::move(v);
        out.start_year += 1;
    }
    return out;
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

std::vector<double> sample_acf(std::span<const double> x, int max_lag) {
    const std::size_t n = x.size();
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= n) {
        throw Error("max_lag must be in [1, n-1]");
    }
    const double m = mean(x);
    double denom = 0.0;
    for (double v : x) denom += (v - m) * (v - m);
    if (denom <= 0.0) throw ConstantSeries();
    std::vector<double> r(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            num += (x[t] - m) * (x[t + k] - m);
        }
        r[static_cast<std::size_t>(k - 1)] = num / denom;
    }
    return r;
}

}  // namespace tradecast
