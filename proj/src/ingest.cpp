#include "tradecast/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <sstream>

namespace tradecast {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string trim(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

bool all_digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

constexpr const char* kWorldReporter = "World";

}  // namespace

double TradePanel::cell(int year, const std::string& country, const std::string& commodity) const {
    auto it = e_ij.find({year, country, commodity});
    return it == e_ij.end() ? 0.0 : it->second;
}

double TradePanel::commodity_total(int year, const std::string& commodity) const {
    auto it = e_j.find({year, commodity});
    return it == e_j.end() ? 0.0 : it->second;
}

double TradePanel::country_total(int year, const std::string& country) const {
    auto it = e_i.find({year, country});
    return it == e_i.end() ? 0.0 : it->second;
}

double TradePanel::world_total(int year) const {
    auto it = e.find(year);
    return it == e.end() ? 0.0 : it->second;
}

std::vector<TradeRecord> parse_trade_csv(std::istream& in, const CsvSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw MissingColumn(schema.reporter);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_csv_line(line);
    for (auto& h : header) h = trim(h);
    auto col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw MissingColumn(name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_rep = col(schema.reporter);
    const std::size_t c_year = col(schema.year);
    const std::size_t c_code = col(schema.hs_code);
    const std::size_t c_val = col(schema.export_value);

    std::vector<TradeRecord> records;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        const std::size_t need = std::max({c_rep, c_year, c_code, c_val}) + 1;
        if (fields.size() < need) throw MalformedRow(row, "expected at least " +
                                                     std::to_string(need) + " fields");
        TradeRecord rec;
        rec.reporter = trim(fields[c_rep]);
        const std::string ys = trim(fields[c_year]);
        const std::string vs = trim(fields[c_val]);
        rec.hs_code = trim(fields[c_code]);

        auto yr = std::from_chars(ys.data(), ys.data() + ys.size(), rec.year);
        if (yr.ec != std::errc() || yr.ptr != ys.data() + ys.size()) {
            throw MalformedRow(row, "bad year '" + ys + "'");
        }
        try {
            std::size_t pos = 0;
            rec.export_value = std::stod(vs, &pos);
            if (pos != vs.size()) throw std::invalid_argument(vs);
        } catch (const std::exception&) {
            throw MalformedRow(row, "bad export value '" + vs + "'");
        }
        if (!std::isfinite(rec.export_value)) throw MalformedRow(row, "non-finite export value");
        if (rec.hs_code.size() < 4 || rec.hs_code.size() > 6 || !all_digits(rec.hs_code)) {
            throw MalformedRow(row, "bad HS code '" + rec.hs_code + "'");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

TradePanel build_panel(const std::vector<TradeRecord>& records, int hs_level) {
    if (hs_level != 4) throw Error("only 4-digit panels are supported");
    if (records.empty()) throw Error("no records");

    // Sort into deterministic aggregation order regardless of input order.
    std::vector<const TradeRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const TradeRecord* a, const TradeRecord* b) {
        return std::tie(a->year, a->reporter, a->hs_code) <
               std::tie(b->year, b->reporter, b->hs_code);
    });

    TradePanel panel;
    int ymin = records.front().year, ymax = records.front().year;
    for (const auto* r : sorted) {
        if (r->export_value < 0.0) {
            throw NegativeValue("negative export for " + r->reporter + "/" + r->hs_code +
                                "/" + std::to_string(r->year));
        }
        ymin = std::min(ymin, r->year);
        ymax = std::max(ymax, r->year);
        const std::string code4 = r->hs_code.substr(0, 4);
        if (r->reporter == kWorldReporter) {
            panel.world_rows[r->year] += r->export_value;
            continue;
        }
        panel.countries.insert(r->reporter);
        panel.commodities.insert(code4);
        panel.e_ij[{r->year, r->reporter, code4}] += r->export_value;
        panel.e_j[{r->year, code4}] += r->export_value;
        panel.e_i[{r->year, r->reporter}] += r->export_value;
        panel.e[r->year] += r->export_value;
    }

    std::set<int> seen;
    for (const auto* r : sorted) seen.insert(r->year);
    for (int y = ymin; y <= ymax; ++y) {
        if (!seen.count(y)) throw GapInYears(y);
        panel.years.push_back(y);
    }
    return panel;
}

std::vector<PanelViolation> validate_panel(const TradePanel& panel, double rel_tol) {
    std::vector<PanelViolation> out;
    auto mismatch = [&](double a, double b) {
        double scale = std::max({std::abs(a), std::abs(b), 1.0});
        return std::abs(a - b) > rel_tol * scale;
    };

    int prev = 0;
    bool first = true;
    for (int y : panel.years) {
        if (!first && y != prev + 1) {
            out.push_back({"YearGap", y, "years not consecutive"});
        }
        prev = y;
        first = false;
    }

    for (const auto& [key, v] : panel.e_ij) {
        if (v < 0.0) {
            out.push_back({"NegativeValue", std::get<0>(key),
                           std::get<1>(key) + "/" + std::get<2>(key)});
        }
    }

    for (int y : panel.years) {
        const double total = panel.world_total(y);

        double sum_j = 0.0;
        for (const auto& j : panel.commodities) sum_j += panel.commodity_total(y, j);
        if (mismatch(sum_j, total)) {
            out.push_back({"AggregateMismatch", y, "sum over commodities != world total"});
        }

        double sum_i = 0.0;
        for (const auto& i : panel.countries) sum_i += panel.country_total(y, i);
        if (mismatch(sum_i, total)) {
            out.push_back({"AggregateMismatch", y, "sum over countries != world total"});
        }

        for (const auto& j : panel.commodities) {
            double s = 0.0;
            for (const auto& i : panel.countries) s += panel.cell(y, i, j);
            if (mismatch(s, panel.commodity_total(y, j))) {
                out.push_back({"AggregateMismatch", y, "e_j(" + j + ") != sum of cells"});
            }
        }
        for (const auto& i : panel.countries) {
            double s = 0.0;
            for (const auto& j : panel.commodities) s += panel.cell(y, i, j);
            if (mismatch(s, panel.country_total(y, i))) {
                out.push_back({"AggregateMismatch", y, "e_i(" + i + ") != sum of cells"});
            }
        }

        auto wr = panel.world_rows.find(y);
        if (wr != panel.world_rows.end() && mismatch(wr->second, total)) {
            out.push_back({"WorldRowMismatch", y, "'World' reporter row != summed world total"});
        }
    }
    return out;
}

}  // namespace tradecast
