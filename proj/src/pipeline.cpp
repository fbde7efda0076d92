#include "tradecast/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tradecast/adf.hpp"
#include "tradecast/identify.hpp"
#include "tradecast/outliers.hpp"
#include "tradecast/plot.hpp"

namespace fs = std::filesystem;

namespace tradecast {

namespace {

std::string trim(std::string s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        int r = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected integer, got '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected number, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected boolean, got '" + v + "'");
}

bool in_textile_chapters(const std::string& code4) {
    if (code4.size() < 2) return false;
    const int chapter = (code4[0] - '0') * 10 + (code4[1] - '0');
    return chapter >= 50 && chapter <= 67;
}

std::vector<NrcaSeries> load_nrca_csv(const PipelineConfig& cfg) {
    std::ifstream in(cfg.input_path);
    if (!in) throw IoError("cannot open " + cfg.input_path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty NRCA file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string> cols;
    {
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) cols.push_back(trim(f));
    }
    if (cols.size() < 2 || cols[0] != "year") {
        throw ConfigError("NRCA CSV must start with a 'year' column");
    }

    std::vector<NrcaSeries> out(cols.size() - 1);
    for (std::size_t j = 1; j < cols.size(); ++j) {
        out[j - 1].country = cfg.country;
        out[j - 1].commodity = cols[j];
    }
    std::size_t rowno = 1;
    while (std::getline(in, line)) {
        ++rowno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string f;
        std::vector<std::string> fields;
        while (std::getline(ss, f, ',')) fields.push_back(trim(f));
        if (fields.size() != cols.size()) throw MalformedRow(rowno, "wrong field count");
        const int year = to_int("year", fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            out[j - 1].years.push_back(year);
            // file carries display-scaled values; store raw
            out[j - 1].values.push_back(to_double(cols[j], fields[j]) / cfg.display_scale);
        }
    }
    return out;
}

}  // namespace

void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "input") cfg.input_path = value;
    else if (key == "mode") {
        if (value == "raw-trade") cfg.input_mode = InputMode::RawTrade;
        else if (value == "nrca-series") cfg.input_mode = InputMode::NrcaSeries;
        else throw ConfigError("mode must be raw-trade or nrca-series");
    }
    else if (key == "country") cfg.country = value;
    else if (key == "window_start") cfg.window_start = to_int(key, value);
    else if (key == "window_end") cfg.window_end = to_int(key, value);
    else if (key == "min_run") cfg.min_run = to_int(key, value);
    else if (key == "threshold") cfg.threshold = to_double(key, value);
    else if (key == "train_end") cfg.train_end = to_int(key, value);
    else if (key == "test_year") cfg.test_year = to_int(key, value);
    else if (key == "horizon") cfg.horizon = to_int(key, value);
    else if (key == "alpha") cfg.alpha = to_double(key, value);
    else if (key == "adf_lags") cfg.adf_lags = to_int(key, value);
    else if (key == "max_d") cfg.max_d = to_int(key, value);
    else if (key == "p_max") cfg.p_max = to_int(key, value);
    else if (key == "q_max") cfg.q_max = to_int(key, value);
    else if (key == "lb_lag") cfg.lb_lag = to_int(key, value);
    else if (key == "outlier_critical") cfg.outlier_critical = to_double(key, value);
    else if (key == "max_events") cfg.max_events = to_int(key, value);
    else if (key == "chapters_50_67") cfg.chapters_50_67 = to_bool(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "seed") cfg.seed = to_int(key, value);
    else if (key == "format") {
        if (value == "csv") cfg.format = TableFormat::Csv;
        else if (value == "txt") cfg.format = TableFormat::Txt;
        else throw ConfigError("format must be csv or txt");
        cfg.format_name = value;
    }
    else throw ConfigError("unknown config key '" + key + "'");
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    PipelineConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        }
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::vector<NrcaSeries> load_nrca_series(const PipelineConfig& cfg) {
    if (cfg.input_mode == InputMode::NrcaSeries) return load_nrca_csv(cfg);

    std::ifstream in(cfg.input_path);
    if (!in) throw IoError("cannot open " + cfg.input_path);
    auto records = parse_trade_csv(in);
    TradePanel panel = build_panel(records);
    auto violations = validate_panel(panel);
    if (!violations.empty()) {
        throw Error("panel failed validation: " + violations.front().kind + " in year " +
                    std::to_string(violations.front().year));
    }
    std::vector<NrcaSeries> out;
    for (const auto& j : panel.commodities) {
        if (cfg.chapters_50_67 && !in_textile_chapters(j)) continue;
        out.push_back(nrca_series(panel, cfg.country, j));
    }
    return out;
}

ReportBundle run_pipeline(const PipelineConfig& cfg) {
    // validate before any work
    if (cfg.input_path.empty()) throw ConfigError("input is required");
    if (cfg.train_end >= cfg.test_year) throw ConfigError("train_end must precede test_year");
    if (cfg.window_start > cfg.window_end) throw ConfigError("empty screening window");
    if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");

    ReportBundle bundle;
    bundle.series = load_nrca_series(cfg);
    if (bundle.series.empty()) throw Error("no NRCA series in input");
    const int last_year = bundle.series.front().years.back();
    if (cfg.test_year > last_year && cfg.input_mode == InputMode::NrcaSeries) {
        // test year beyond the data is allowed; the error column stays empty
    }

    auto revealed = screen_revealed(bundle.series, cfg.window_start, cfg.window_end,
                                    cfg.min_run, cfg.threshold);

    for (const auto& rc : revealed) {
        const auto it = std::find_if(bundle.series.begin(), bundle.series.end(),
                                     [&](const NrcaSeries& s) { return s.commodity == rc.commodity; });
        CategoryResult res;
        res.commodity = rc.commodity;
        const Series full = it->to_series(cfg.display_scale);
        res.train = full.window(full.start_year, cfg.train_end);

        res.differencing = difference_until_stationary(res.train, cfg.alpha, cfg.max_d,
                                                       cfg.adf_lags);
        const Series stationary = difference(res.train, res.differencing.d);
        res.candidates = tentative_orders(stationary, res.differencing.d, cfg.p_max, cfg.q_max);
        res.model = select_best(res.train, res.differencing.d, res.candidates, true);
        res.diagnostics = ljung_box(res.model, cfg.lb_lag);
        res.forecasts = forecast(res.model, cfg.horizon);
        res.events = detect(res.model, res.train, cfg.outlier_critical, cfg.max_events);
        if (cfg.test_year <= full.last_year()) {
            res.has_actual = true;
            res.actual_test = full.values[static_cast<std::size_t>(cfg.test_year - full.start_year)];
            res.percent_error =
                percent_forecast_error(res.actual_test, res.forecasts.entries.front().point);
        }
        bundle.results.push_back(std::move(res));
    }

    fs::create_directories(cfg.out_dir);
    const std::string ext = cfg.format == TableFormat::Csv ? ".csv" : ".txt";
    auto emit = [&](const std::string& tag, auto&& writer) {
        const std::string path = (fs::path(cfg.out_dir) / (tag + ext)).string();
        writer(path);
        bundle.tables[tag] = path;
    };
    emit("t1_nrca", [&](const std::string& p) {
        write_nrca_table(bundle.series, cfg.display_scale, cfg.format, p);
    });
    emit("t2_adf_level", [&](const std::string& p) {
        write_adf_level_table(bundle.results, cfg.format, p);
    });
    emit("t3_adf_differenced", [&](const std::string& p) {
        write_adf_diff_table(bundle.results, cfg.format, p);
    });
    emit("t4_identification", [&](const std::string& p) {
        write_identification_table(bundle.results, cfg.format, p);
    });
    emit("t5_orders", [&](const std::string& p) { write_order_table(bundle.results, cfg.format, p); });
    emit("t6_diagnostics", [&](const std::string& p) {
        write_diagnostics_table(bundle.results, cfg.format, p);
    });
    emit("t7_forecast", [&](const std::string& p) {
        write_forecast_table(bundle.results, cfg.format, p);
    });
    emit("t8_two_year", [&](const std::string& p) {
        write_two_year_table(bundle.results, cfg.format, p);
    });
    emit("t9_outliers", [&](const std::string& p) {
        write_outlier_table(bundle.results, cfg.format, p);
    });

    if (cfg.emit_plots) {
        for (const auto& r : bundle.results) {
            const std::string path =
                (fs::path(cfg.out_dir) / ("forecast_" + r.commodity + ".svg")).string();
            emit_forecast_plot(r.train, r.forecasts, r.events, "HS" + r.commodity + " NRCA (x1e6)",
                               path);
            bundle.plots.push_back(path);
        }
    }

    const std::string manifest_path = (fs::path(cfg.out_dir) / "manifest.txt").string();
    {
        std::ofstream m(manifest_path, std::ios::binary);
        if (!m) throw IoError("cannot write " + manifest_path);
        m << "tradecast_version=1.0.0\n";
        m << "mode=" << (cfg.input_mode == InputMode::RawTrade ? "raw-trade" : "nrca-series") << "\n";
        m << "input=" << cfg.input_path << "\n";
        m << "country=" << cfg.country << "\n";
        m << "window_start=" << cfg.window_start << "\nwindow_end=" << cfg.window_end << "\n";
        m << "min_run=" << cfg.min_run << "\nthreshold=" << cfg.threshold << "\n";
        m << "train_end=" << cfg.train_end << "\ntest_year=" << cfg.test_year << "\n";
        m << "horizon=" << cfg.horizon << "\nalpha=" << cfg.alpha << "\n";
        m << "adf_lags=" << cfg.adf_lags << "\nmax_d=" << cfg.max_d << "\n";
        m << "p_max=" << cfg.p_max << "\nq_max=" << cfg.q_max << "\nlb_lag=" << cfg.lb_lag << "\n";
        m << "outlier_critical=" << cfg.outlier_critical << "\nmax_events=" << cfg.max_events << "\n";
        m << "chapters_50_67=" << (cfg.chapters_50_67 ? "true" : "false") << "\n";
        m << "format=" << cfg.format_name << "\nseed=" << cfg.seed << "\n";
        m << "revealed=";
        for (std::size_t i = 0; i < bundle.results.size(); ++i) {
            if (i) m << ";";
            m << bundle.results[i].commodity;
        }
        m << "\n";
        for (const auto& [tag, path] : bundle.tables) m << "table." << tag << "=" << path << "\n";
        for (const auto& p : bundle.plots) m << "plot=" << p << "\n";
    }
    bundle.manifest = manifest_path;
    return bundle;
}

}  // namespace tradecast
