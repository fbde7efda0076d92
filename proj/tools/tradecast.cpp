// Command-line front end: subcommands mirror the pipeline stages, a full
// `run` drives everything from a key=value config file. Exit codes: 0 ok,
// 1 validation/config error, 2 runtime failure.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tradecast/adf.hpp"
#include "tradecast/identify.hpp"
#include "tradecast/outliers.hpp"
#include "tradecast/pipeline.hpp"
#include "tradecast/plot.hpp"

namespace fs = std::filesystem;
using namespace tradecast;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "csv";
    long seed = 0;
};

PipelineConfig make_config(const GlobalOpts& g) {
    PipelineConfig cfg;
    if (!g.config_path.empty()) cfg = load_config(g.config_path);
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    apply_config_entry(cfg, "format", g.format);
    cfg.seed = g.seed;
    return cfg;
}

Series find_category(const std::vector<NrcaSeries>& all, const std::string& category,
                     double scale) {
    for (const auto& s : all) {
        if (s.commodity == category) return s.to_series(scale);
    }
    throw ConfigError("category '" + category + "' not found in input");
}

void print_table(const std::string& text) { std::cout << text; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NRCA trade-competitiveness forecasting toolkit"};
    app.require_subcommand(1);
    app.fallthrough();   // global flags may follow the subcommand name

    GlobalOpts g;
    app.add_option("--config", g.config_path, "key=value config file")
        ->envname("TRADECAST_CONFIG");
    app.add_option("--out", g.out_dir, "output directory")->envname("TRADECAST_OUT");
    app.add_option("--format", g.format, "table format: csv or txt")
        ->check(CLI::IsMember({"csv", "txt"}))
        ->envname("TRADECAST_FORMAT");
    app.add_option("--seed", g.seed, "seed echoed into the run manifest")
        ->envname("TRADECAST_SEED");

    std::string input, country = "USA", category;
    int p = 0, d = -1, q = 0, horizon = 3, lags = 0, min_run = 3;
    int win_start = 2010, win_end = 2016, p_max = 5, q_max = 5;
    double alpha = 0.05, threshold = 0.0, critical = 2.5;
    bool chapters = false, nrca_mode = false;
    CsvSchema schema;

    auto* c_ingest = app.add_subcommand("ingest", "parse a trade CSV, build and validate the panel");
    c_ingest->add_option("--input", input, "trade CSV path")->required();
    c_ingest->add_option("--col-reporter", schema.reporter, "reporter column name");
    c_ingest->add_option("--col-year", schema.year, "year column name");
    c_ingest->add_option("--col-code", schema.hs_code, "HS code column name");
    c_ingest->add_option("--col-value", schema.export_value, "export value column name");

    auto* c_nrca = app.add_subcommand("nrca", "NRCA table from a raw trade CSV");
    c_nrca->add_option("--input", input)->required();
    c_nrca->add_option("--country", country);
    c_nrca->add_flag("--chapters-50-67", chapters, "emit only HS chapters 50-67");
    c_nrca->add_flag("--nrca-input", nrca_mode, "input is already an NRCA series CSV");

    auto* c_screen = app.add_subcommand("screen", "revealed-category screening");
    c_screen->add_option("--input", input, "NRCA series CSV")->required();
    c_screen->add_option("--window-start", win_start);
    c_screen->add_option("--window-end", win_end);
    c_screen->add_option("--min-run", min_run);
    c_screen->add_option("--threshold", threshold);

    auto* c_adf = app.add_subcommand("adf", "unit-root tests and differencing decisions");
    c_adf->add_option("--input", input, "NRCA series CSV")->required();
    c_adf->add_option("--lags", lags, "augmentation lag order");
    c_adf->add_option("--alpha", alpha);

    auto* c_ident = app.add_subcommand("identify", "tentative order identification");
    c_ident->add_option("--input", input, "NRCA series CSV")->required();
    c_ident->add_option("--category", category)->required();
    c_ident->add_option("--d", d, "differencing order (default: ADF decision)");
    c_ident->add_option("--p-max", p_max);
    c_ident->add_option("--q-max", q_max);

    auto* c_fit = app.add_subcommand("fit", "estimate one ARIMA model");
    c_fit->add_option("--input", input, "NRCA series CSV")->required();
    c_fit->add_option("--category", category)->required();
    c_fit->add_option("--p", p)->required();
    c_fit->add_option("--d", d)->required();
    c_fit->add_option("--q", q)->required();

    auto* c_fc = app.add_subcommand("forecast", "fit and forecast one category");
    c_fc->add_option("--input", input, "NRCA series CSV")->required();
    c_fc->add_option("--category", category)->required();
    c_fc->add_option("--horizon", horizon);

    auto* c_out = app.add_subcommand("outliers", "additive outlier / level shift detection");
    c_out->add_option("--input", input, "NRCA series CSV")->required();
    c_out->add_option("--category", category)->required();
    c_out->add_option("--critical", critical);

    auto* c_run = app.add_subcommand("run", "full pipeline from the config file");
    auto* c_report = app.add_subcommand("report", "emit tables only (no plots) from the config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        PipelineConfig cfg = make_config(g);
        const double scale = cfg.display_scale;

        auto load_series_csv = [&](const std::string& path) {
            PipelineConfig c = cfg;
            c.input_mode = InputMode::NrcaSeries;
            c.input_path = path;
            return load_nrca_series(c);
        };
        auto train_series = [&](const Series& s) {
            return s.window(s.start_year, std::min(cfg.train_end, s.last_year()));
        };

        if (*c_ingest) {
            std::ifstream in(input);
            if (!in) throw IoError("cannot open " + input);
            auto records = parse_trade_csv(in, schema);
            auto panel = build_panel(records);
            auto violations = validate_panel(panel);
            std::cout << "records=" << records.size() << " years=" << panel.years.size()
                      << " countries=" << panel.countries.size()
                      << " commodities=" << panel.commodities.size() << "\n";
            for (const auto& v : violations) {
                std::cout << "violation: " << v.kind << " year=" << v.year << " " << v.detail
                          << "\n";
            }
            return violations.empty() ? 0 : 1;
        }

        if (*c_nrca) {
            PipelineConfig c = cfg;
            c.input_mode = nrca_mode ? InputMode::NrcaSeries : InputMode::RawTrade;
            c.input_path = input;
            c.country = country;
            c.chapters_50_67 = chapters;
            auto series = load_nrca_series(c);
            fs::create_directories(cfg.out_dir);
            const std::string path =
                (fs::path(cfg.out_dir) / ("nrca." + cfg.format_name)).string();
            print_table(write_nrca_table(series, scale, cfg.format, path));
            return 0;
        }

        if (*c_screen) {
            auto series = load_series_csv(input);
            auto revealed = screen_revealed(series, win_start, win_end, min_run, threshold);
            std::cout << "commodity,run_start,run_length,mean_nrca_x1e6\n";
            for (const auto& r : revealed) {
                std::cout << r.commodity << "," << r.run_start << "," << r.run_length << ","
                          << r.mean_nrca * scale << "\n";
            }
            return 0;
        }

        if (*c_adf) {
            auto series = load_series_csv(input);
            std::cout << "category,d,tau,p_value,stationary\n";
            for (const auto& s : series) {
                auto dec = difference_until_stationary(train_series(s.to_series(scale)), alpha,
                                                       cfg.max_d, lags);
                for (std::size_t i = 0; i < dec.trail.size(); ++i) {
                    const auto& r = dec.trail[i];
                    std::cout << s.commodity << "," << i << "," << r.tau << "," << r.p_value
                              << "," << (r.stationary ? "Yes" : "No") << "\n";
                }
            }
            return 0;
        }

        if (*c_ident) {
            auto series = load_series_csv(input);
            Series s = train_series(find_category(series, category, scale));
            int dd = d >= 0 ? d : difference_until_stationary(s, cfg.alpha, cfg.max_d, 0).d;
            auto cands = tentative_orders(difference(s, dd), dd, p_max, q_max);
            std::cout << "method,p,q\n";
            for (const auto& c : cands) {
                std::cout << method_name(c.source) << "," << c.p << "," << c.q << "\n";
            }
            return 0;
        }

        if (*c_fit) {
            auto series = load_series_csv(input);
            Series s = train_series(find_category(series, category, scale));
            auto m = fit(s, ArimaSpec{p, d, q, true});
            std::cout << "spec=(" << p << "," << d << "," << q << ") constant=" << m.constant
                      << " sigma=" << std::sqrt(m.sigma2) << " aic=" << m.aic
                      << " converged=" << (m.converged ? "yes" : "no") << "\nar=";
            for (double v : m.ar) std::cout << v << " ";
            std::cout << "\nma=";
            for (double v : m.ma) std::cout << v << " ";
            std::cout << "\n";
            return 0;
        }

        if (*c_fc) {
            auto series = load_series_csv(input);
            Series s = train_series(find_category(series, category, scale));
            auto dec = difference_until_stationary(s, cfg.alpha, cfg.max_d, cfg.adf_lags);
            auto cands = tentative_orders(difference(s, dec.d), dec.d, cfg.p_max, cfg.q_max);
            auto m = select_best(s, dec.d, cands, true);
            auto fc = forecast(m, horizon);
            std::cout << "year,point,std_error,lo95,hi95\n";
            for (const auto& e : fc.entries) {
                std::cout << e.year << "," << e.point << "," << e.stderr_ << "," << e.lo95 << ","
                          << e.hi95 << "\n";
            }
            return 0;
        }

        if (*c_out) {
            auto series = load_series_csv(input);
            Series s = train_series(find_category(series, category, scale));
            auto dec = difference_until_stationary(s, cfg.alpha, cfg.max_d, cfg.adf_lags);
            auto cands = tentative_orders(difference(s, dec.d), dec.d, cfg.p_max, cfg.q_max);
            auto m = select_best(s, dec.d, cands, true);
            auto events = detect(m, s, critical, cfg.max_events);
            std::cout << "kind,year,magnitude,t_stat,iteration\n";
            for (const auto& ev : events) {
                std::cout << (ev.kind == OutlierKind::AO ? "AO" : "LS") << "," << ev.year << ","
                          << ev.magnitude << "," << ev.t_stat << "," << ev.iteration << "\n";
            }
            return 0;
        }

        if (*c_run || *c_report) {
            if (g.config_path.empty()) throw ConfigError("run requires --config");
            cfg.emit_plots = c_run->parsed();
            auto bundle = run_pipeline(cfg);
            std::cout << "revealed categories: " << bundle.results.size() << "\n";
            for (const auto& [tag, path] : bundle.tables) std::cout << tag << ": " << path << "\n";
            if (*c_run) {
                for (const auto& pth : bundle.plots) std::cout << "plot: " << pth << "\n";
            }
            std::cout << "manifest: " << bundle.manifest << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const MalformedRow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const MissingColumn& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const WindowOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
