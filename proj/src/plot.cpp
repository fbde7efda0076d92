#include "tradecast/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tradecast {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string emit_forecast_plot(const Series& history, const ForecastResult& forecasts,
                               const std::vector<OutlierEvent>& events,
                               const std::string& title, const std::string& path) {
    if (history.size() == 0) throw Error("empty history");

    const double width = 720, height = 420;
    const double ml = 60, mr = 20, mt = 40, mb = 40;

    const int year_lo = history.start_year;
    int year_hi = history.last_year();
    double v_lo = history.values[0], v_hi = history.values[0];
    for (double v : history.values) {
        v_lo = std::min(v_lo, v);
        v_hi = std::max(v_hi, v);
    }
    for (const auto& f : forecasts.entries) {
        year_hi = std::max(year_hi, f.year);
        v_lo = std::min(v_lo, f.lo95);
        v_hi = std::max(v_hi, f.hi95);
    }
    if (v_hi == v_lo) v_hi = v_lo + 1.0;
    const double pad = 0.05 * (v_hi - v_lo);
    v_lo -= pad;
    v_hi += pad;

    auto sx = [&](double year) {
        return ml + (year - year_lo) / std::max(1.0, double(year_hi - year_lo)) *
                        (width - ml - mr);
    };
    auto sy = [&](double v) { return height - mb - (v - v_lo) / (v_hi - v_lo) * (height - mt - mb); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<text x=\"" << ml << "\" y=\"24\" font-size=\"16\">" << title << "</text>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    for (int y = year_lo; y <= year_hi; y += std::max(1, (year_hi - year_lo) / 8)) {
        svg << "<text x=\"" << num(sx(y) - 14) << "\" y=\"" << height - mb + 16
            << "\" font-size=\"10\">" << y << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double v = v_lo + i * (v_hi - v_lo) / 4.0;
        svg << "<text x=\"4\" y=\"" << num(sy(v) + 4) << "\" font-size=\"10\">" << num(v)
            << "</text>\n";
    }

    // 95% band
    if (!forecasts.entries.empty()) {
        svg << "<polygon class=\"ci-band\" fill=\"#c8d8f0\" stroke=\"none\" points=\"";
        svg << num(sx(history.last_year())) << "," << num(sy(history.values.back())) << " ";
        for (const auto& f : forecasts.entries) svg << num(sx(f.year)) << "," << num(sy(f.hi95)) << " ";
        for (auto it = forecasts.entries.rbegin(); it != forecasts.entries.rend(); ++it) {
            svg << num(sx(it->year)) << "," << num(sy(it->lo95)) << " ";
        }
        svg << num(sx(history.last_year())) << "," << num(sy(history.values.back()));
        svg << "\"/>\n";
    }

    svg << "<polyline class=\"history\" fill=\"none\" stroke=\"#203080\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < history.size(); ++i) {
        svg << num(sx(history.year_at(i))) << "," << num(sy(history.values[i])) << " ";
    }
    svg << "\"/>\n";

    if (!forecasts.entries.empty()) {
        svg << "<polyline class=\"forecast\" fill=\"none\" stroke=\"#a03020\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"4 3\" points=\"";
        svg << num(sx(history.last_year())) << "," << num(sy(history.values.back())) << " ";
        for (const auto& f : forecasts.entries) svg << num(sx(f.year)) << "," << num(sy(f.point)) << " ";
        svg << "\"/>\n";
        for (const auto& f : forecasts.entries) {
            svg << "<circle class=\"forecast-point\" cx=\"" << num(sx(f.year)) << "\" cy=\""
                << num(sy(f.point)) << "\" r=\"2.5\" fill=\"#a03020\"/>\n";
        }
    }

    // event markers: circles for level shifts, rectangles for additive outliers
    for (const auto& ev : events) {
        const int idx = ev.year - history.start_year;
        if (idx < 0 || idx >= static_cast<int>(history.size())) continue;
        const double x = sx(ev.year), y = sy(history.values[static_cast<std::size_t>(idx)]);
        if (ev.kind == OutlierKind::LS) {
            svg << "<circle class=\"ls-marker\" cx=\"" << num(x) << "\" cy=\"" << num(y)
                << "\" r=\"7\" fill=\"none\" stroke=\"#207020\" stroke-width=\"2\"/>\n";
        } else {
            svg << "<rect class=\"ao-marker\" x=\"" << num(x - 6) << "\" y=\"" << num(y - 6)
                << "\" width=\"12\" height=\"12\" fill=\"none\" stroke=\"#a07020\" "
                   "stroke-width=\"2\"/>\n";
        }
    }
    svg << "</svg>\n";

    std::string text = svg.str();
    if (!path.empty()) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path);
        out << text;
    }
    return text;
}

}  // namespace tradecast
