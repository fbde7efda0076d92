#include "tradecast/nrca.hpp"

#include <algorithm>
#include <cmath>

namespace tradecast {

Series NrcaSeries::to_series(double scale) const {
    std::vector<double> v(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) v[i] = values[i] * scale;
    return Series(std::move(v), years.empty() ? 0 : years.front());
}

double nrca_value(const TradePanel& panel, const std::string& country,
                  const std::string& commodity, int year) {
    if (!panel.countries.count(country) || !panel.commodities.count(commodity) ||
        std::find(panel.years.begin(), panel.years.end(), year) == panel.years.end()) {
        throw MissingCell(country + "/" + commodity + "/" + std::to_string(year));
    }
    const double e = panel.world_total(year);
    if (e <= 0.0) throw ZeroWorldTrade(year);
    const double e_ij = panel.cell(year, country, commodity);
    const double e_j = panel.commodity_total(year, commodity);
    const double e_i = panel.country_total(year, country);
    return e_ij / e - (e_j * e_i) / (e * e);
}

NrcaSeries nrca_series(const TradePanel& panel, const std::string& country,
                       const std::string& commodity) {
    if (panel.years.size() < 2) throw TooShort("panel covers fewer than 2 years");
    NrcaSeries out;
    out.country = country;
    out.commodity = commodity;
    out.years = panel.years;
    out.values.reserve(panel.years.size());
    for (int y : panel.years) out.values.push_back(nrca_value(panel, country, commodity, y));
    return out;
}

std::vector<RevealedCategory> screen_revealed(const std::vector<NrcaSeries>& series_set,
                                              int window_start, int window_end,
                                              int min_run, double threshold) {
    if (min_run < 1) throw Error("min_run must be >= 1");
    if (window_start > window_end) throw WindowOutOfRange("empty screening window");

    std::vector<RevealedCategory> out;
    for (const auto& s : series_set) {
        if (s.years.empty()) continue;
        if (window_start < s.years.front() || window_end > s.years.back()) {
            throw WindowOutOfRange("window [" + std::to_string(window_start) + "," +
                                   std::to_string(window_end) + "] outside series years of " +
                                   s.commodity);
        }
        int best_len = 0, best_start = 0;
        int run_len = 0, run_start = 0;
        double win_sum = 0.0;
        int win_n = 0;
        for (std::size_t i = 0; i < s.years.size(); ++i) {
            const int y = s.years[i];
            if (y < window_start || y > window_end) continue;
            win_sum += s.values[i];
            ++win_n;
            if (s.values[i] > threshold) {
                if (run_len == 0) run_start = y;
                ++run_len;
                if (run_len > best_len) {
                    best_len = run_len;
                    best_start = run_start;
                }
            } else {
                run_len = 0;
            }
        }
        if (best_len >= min_run) {
            out.push_back({s.commodity, best_start, best_len,
                           win_n > 0 ? win_sum / win_n : 0.0});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.mean_nrca > b.mean_nrca;
    });
    return out;
}

}  // namespace tradecast
