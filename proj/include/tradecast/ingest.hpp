#pragma once

#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tradecast/errors.hpp"

namespace tradecast {

/// One data row of a product-level export file.
struct TradeRecord {
    std::string reporter;
    int year = 0;
    std::string hs_code;      // 4 to 6 digits, kept verbatim until panel build
    double export_value = 0.0;
};

/// Column-name mapping for parse_trade_csv. Defaults match the bundled
/// fixture format.
struct CsvSchema {
    std::string reporter = "reporter";
    std::string year = "year";
    std::string hs_code = "hs_code";
    std::string export_value = "export_value";
};

/// Yearly trade aggregates at the 4-digit HS level.
///
/// Reporter names are country codes; a reporter literally named "World" is
/// treated as a pre-aggregated world row: it is excluded from all country
/// sums and only cross-checked by validate_panel. All aggregate maps are
/// built by summation in sorted key order.
struct TradePanel {
    std::vector<int> years;                       // consecutive, ascending
    std::set<std::string> countries;
    std::set<std::string> commodities;            // 4-digit codes

    // e_ij[(year, country, commodity)], e_j[(year, commodity)],
    // e_i[(year, country)], e[year]
    std::map<std::tuple<int, std::string, std::string>, double> e_ij;
    std::map<std::pair<int, std::string>, double> e_j;
    std::map<std::pair<int, std::string>, double> e_i;
    std::map<int, double> e;

    // "World" pseudo-reporter totals when present in the input, by year.
    std::map<int, double> world_rows;

    double cell(int year, const std::string& country, const std::string& commodity) const;
    double commodity_total(int year, const std::string& commodity) const;
    double country_total(int year, const std::string& country) const;
    double world_total(int year) const;
};

/// A violated panel identity found by validate_panel. Violations are data,
/// not errors.
struct PanelViolation {
    std::string kind;     // AggregateMismatch | NegativeValue | YearGap | WorldRowMismatch
    int year = 0;
    std::string detail;
};

/// Parse a UTF-8 CSV with a header row into trade records. Codes of 5 or 6
/// digits are retained verbatim; row order is preserved.
std::vector<TradeRecord> parse_trade_csv(std::istream& in, const CsvSchema& schema = {});

/// Aggregate records into a panel at the 4-digit level (codes truncated to
/// their first four digits and summed). Throws GapInYears when a year inside
/// the observed span has no records, NegativeValue on a negative export.
TradePanel build_panel(const std::vector<TradeRecord>& records, int hs_level = 4);

/// Check every panel identity; empty result means the panel is consistent.
std::vector<PanelViolation> validate_panel(const TradePanel& panel, double rel_tol = 1e-9);

}  // namespace tradecast
