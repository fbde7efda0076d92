// Shared test fixtures: the published NRCA table for the six revealed
// categories (values x1e6, 1996-2016) and small helpers around it.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tradecast/series.hpp"

namespace fixtures {

inline const std::vector<int> kYears = [] {
    std::vector<int> y;
    for (int v = 1996; v <= 2016; ++v) y.push_back(v);
    return y;
}();

inline const std::map<std::string, std::vector<double>> kNrcaTable = {
    {"5201", {474.32, 420.97, 392.00, 92.27, 217.65, 273.19, 255.00, 366.25, 406.10, 334.84,
              332.55, 293.19, 269.48, 237.20, 326.33, 400.89, 277.48, 241.65, 189.75, 198.94,
              239.33}},
    {"5502", {73.14, 53.29, 53.07, 47.23, 35.92, 45.73, 40.32, 34.13, 37.40, 39.64, 37.25,
              40.76, 45.10, 61.84, 50.86, 44.47, 50.92, 52.98, 51.94, 47.55, 50.07}},
    {"5603", {3.91, 18.69, 15.41, 9.92, 26.78, 32.63, 39.27, 50.53, 50.64, 61.20, 60.09, 39.51,
              39.46, 41.84, 45.75, 39.32, 42.85, 44.10, 40.45, 36.44, 33.56}},
    {"5205", {-102.75, -90.44, -75.10, -61.45, -44.77, -42.71, -32.39, -32.45, -14.37, 1.69,
              5.98, 11.12, 17.85, 20.24, 15.74, 50.69, 18.85, 7.87, 12.02, 13.06, 20.09}},
    {"5703", {-8.37, 7.80, 11.50, 11.22, 22.18, 21.61, 19.10, 18.00, 22.47, 25.70, 26.17, 17.13,
              24.97, 22.68, 24.73, 22.07, 23.23, 20.43, 19.05, 16.50, 17.20}},
    {"6309", {23.11, 22.84, 17.54, 13.01, 15.24, 12.79, 13.69, 15.00, 15.49, 13.20, 10.89,
              12.44, 13.81, 14.16, 15.51, 18.34, 18.59, 19.26, 18.47, 16.17, 17.82}},
};

inline const std::vector<std::string> kCategories = {"5201", "5502", "5603",
                                                     "5205", "5703", "6309"};

/// Full 1996-2016 series in modeling units (x1e6 display values as-is).
inline tradecast::Series full_series(const std::string& code) {
    return tradecast::Series(kNrcaTable.at(code), 1996);
}

/// Training window 1996-2015.
inline tradecast::Series train_series(const std::string& code) {
    auto v = kNrcaTable.at(code);
    v.pop_back();
    return tradecast::Series(std::move(v), 1996);
}

inline double actual_2016(const std::string& code) { return kNrcaTable.at(code).back(); }

inline std::string data_path(const std::string& name) {
    return std::string(TRADECAST_DATA_DIR) + "/" + name;
}

}  // namespace fixtures
