#include "tradecast/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tradecast {

namespace {

std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

// A small row-oriented table that renders as CSV or aligned text.
class TableBuilder {
public:
    explicit TableBuilder(std::vector<std::string> header) : header_(std::move(header)) {}

    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    std::string render(TableFormat fmt) const {
        std::ostringstream out;
        if (fmt == TableFormat::Csv) {
            out << join(header_, ",") << "\n";
            for (const auto& r : rows_) out << join(r, ",") << "\n";
            return out.str();
        }
        std::vector<std::size_t> width(header_.size(), 0);
        auto consider = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
                width[i] = std::max(width[i], display_width(r[i]));
            }
        };
        consider(header_);
        for (const auto& r : rows_) consider(r);
        auto emit = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out << "  ";
                out << r[i] << std::string(width[i] - display_width(r[i]), ' ');
            }
            out << "\n";
        };
        emit(header_);
        for (const auto& r : rows_) emit(r);
        return out.str();
    }

private:
    static std::string join(const std::vector<std::string>& v, const char* sep) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += sep;
            s += v[i];
        }
        return s;
    }
    // UTF-8 aware enough for the direction glyphs.
    static std::size_t display_width(const std::string& s) {
        std::size_t w = 0;
        for (unsigned char c : s) {
            if ((c & 0xC0) != 0x80) ++w;
        }
        return w;
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string finish(const TableBuilder& tb, TableFormat fmt, const std::string& path) {
    std::string text = tb.render(fmt);
    if (!path.empty()) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path);
        out << text;
    }
    return text;
}

std::string spec_string(const ArimaSpec& s) {
    return "(" + std::to_string(s.p) + "," + std::to_string(s.d) + "," + std::to_string(s.q) + ")";
}

const char* kUp = "▲";      // ▲
const char* kDown = "▼";    // ▼
const char* kSame = "■";    // ■

std::string direction(double current, double previous) {
    // compared at the 2-decimal display precision, like the printed tables
    const double c = std::round(current * 100.0) / 100.0;
    const double p = std::round(previous * 100.0) / 100.0;
    if (c > p) return kUp;
    if (c < p) return kDown;
    return kSame;
}

}  // namespace

std::string method_name(IdMethod m) {
    switch (m) {
        case IdMethod::ESACF: return "ESACF";
        case IdMethod::SCAN: return "SCAN";
        case IdMethod::MINIC: return "MINIC";
    }
    return "?";
}

std::string write_nrca_table(const std::vector<NrcaSeries>& series, double display_scale,
                             TableFormat fmt, const std::string& path) {
    std::vector<std::string> header{"year"};
    for (const auto& s : series) header.push_back(s.commodity);
    TableBuilder tb(header);
    if (!series.empty()) {
        for (std::size_t i = 0; i < series.front().years.size(); ++i) {
            std::vector<std::string> row{std::to_string(series.front().years[i])};
            for (const auto& s : series) {
                row.push_back(fmt_fixed(s.values[i] * display_scale, 2));
            }
            tb.row(std::move(row));
        }
    }
    return finish(tb, fmt, path);
}

std::string write_adf_level_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                  const std::string& path) {
    TableBuilder tb({"category", "tau", "p_value", "stationary"});
    for (const auto& r : results) {
        const AdfResult& a = r.differencing.trail.front();
        tb.row({r.commodity, fmt_fixed(a.tau, 2), fmt_fixed(a.p_value, 4),
                a.stationary ? "Yes" : "No"});
    }
    return finish(tb, fmt, path);
}

std::string write_adf_diff_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                 const std::string& path) {
    TableBuilder tb({"category", "tau", "p_value", "stationary", "period_of_differencing"});
    for (const auto& r : results) {
        if (r.differencing.d == 0) continue;
        const AdfResult& a = r.differencing.trail.back();
        tb.row({r.commodity, fmt_fixed(a.tau, 2), fmt_fixed(a.p_value, 4),
                a.stationary ? "Yes" : "No", std::to_string(r.differencing.d)});
    }
    return finish(tb, fmt, path);
}

std::string write_identification_table(const std::vector<CategoryResult>& results,
                                       TableFormat fmt, const std::string& path) {
    TableBuilder tb({"category", "method", "p", "q", "score"});
    for (const auto& r : results) {
        for (const auto& c : r.candidates) {
            tb.row({r.commodity, method_name(c.source), std::to_string(c.p),
                    std::to_string(c.q), std::isnan(c.score) ? "" : fmt_fixed(c.score, 4)});
        }
    }
    return finish(tb, fmt, path);
}

std::string write_order_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                              const std::string& path) {
    TableBuilder tb({"category", "p", "d", "q", "aic", "converged"});
    for (const auto& r : results) {
        tb.row({r.commodity, std::to_string(r.model.spec.p), std::to_string(r.model.spec.d),
                std::to_string(r.model.spec.q), fmt_fixed(r.model.aic, 2),
                r.model.converged ? "yes" : "no*"});
    }
    return finish(tb, fmt, path);
}

std::string write_diagnostics_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                    const std::string& path) {
    TableBuilder tb({"category", "model", "to_lag", "chi_square", "df", "p_value"});
    for (const auto& r : results) {
        tb.row({r.commodity, spec_string(r.model.spec), std::to_string(r.diagnostics.to_lag),
                fmt_fixed(r.diagnostics.chi_square, 2), std::to_string(r.diagnostics.df),
                fmt_fixed(r.diagnostics.p_value, 4)});
    }
    return finish(tb, fmt, path);
}

std::string write_forecast_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                 const std::string& path) {
    TableBuilder tb({"category", "actual", "forecast", "std_error", "lo95", "hi95",
                     "percent_forecast_error"});
    for (const auto& r : results) {
        if (r.forecasts.entries.empty()) continue;
        const auto& f = r.forecasts.entries.front();
        tb.row({r.commodity, r.has_actual ? fmt_fixed(r.actual_test, 3) : "",
                fmt_fixed(f.point, 3), fmt_fixed(f.stderr_, 3), fmt_fixed(f.lo95, 3),
                fmt_fixed(f.hi95, 3),
                r.has_actual ? fmt_fixed(r.percent_error, 2) : ""});
    }
    return finish(tb, fmt, path);
}

std::string write_two_year_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                 const std::string& path) {
    TableBuilder tb({"category", "forecast_1", "direction_1", "std_error_1", "lo95_1", "hi95_1",
                     "forecast_2", "direction_2", "std_error_2", "lo95_2", "hi95_2"});
    for (const auto& r : results) {
        if (r.forecasts.entries.size() < 3) continue;
        const auto& f1 = r.forecasts.entries[1];
        const auto& f2 = r.forecasts.entries[2];
        // year-2 direction is relative to the last reported value (the test
        // year actual when known), year-3 relative to the year-2 forecast
        const double base = r.has_actual ? r.actual_test : r.forecasts.entries[0].point;
        tb.row({r.commodity,
                fmt_fixed(f1.point, 2), direction(f1.point, base), fmt_fixed(f1.stderr_, 2),
                fmt_fixed(f1.lo95, 2), fmt_fixed(f1.hi95, 2),
                fmt_fixed(f2.point, 2), direction(f2.point, f1.point), fmt_fixed(f2.stderr_, 2),
                fmt_fixed(f2.lo95, 2), fmt_fixed(f2.hi95, 2)});
    }
    return finish(tb, fmt, path);
}

std::string write_outlier_table(const std::vector<CategoryResult>& results, TableFormat fmt,
                                const std::string& path) {
    TableBuilder tb({"category", "additive_outlier", "level_shift"});
    for (const auto& r : results) {
        std::string ao, ls;
        for (const auto& ev : r.events) {
            std::string& slot = ev.kind == OutlierKind::AO ? ao : ls;
            if (!slot.empty()) slot += ";";
            slot += std::to_string(ev.year);
        }
        tb.row({r.commodity, ao.empty() ? "-" : ao, ls.empty() ? "-" : ls});
    }
    return finish(tb, fmt, path);
}

}  // namespace tradecast
