#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tradecast/pipeline.hpp"
#include "tradecast/plot.hpp"

using namespace tradecast;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PipelineConfig reference_config(const std::string& out_dir) {
    PipelineConfig cfg;
    cfg.input_mode = InputMode::NrcaSeries;
    cfg.input_path = fixtures::data_path("table1_nrca.csv");
    cfg.out_dir = out_dir;
    return cfg;
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("config validation happens before any work") {
    PipelineConfig cfg = reference_config("/tmp/tradecast_never");
    cfg.test_year = cfg.train_end;
    CHECK_THROWS_AS(run_pipeline(cfg), ConfigError);
    CHECK(!fs::exists("/tmp/tradecast_never"));
}

TEST_CASE("unknown config keys are rejected") {
    PipelineConfig cfg;
    CHECK_THROWS_AS(apply_config_entry(cfg, "not_a_key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "train_end", "soon"), ConfigError);
    apply_config_entry(cfg, "train_end", "2014");
    CHECK(cfg.train_end == 2014);
}

TEST_CASE("nrca-series input loads the published table") {
    auto series = load_nrca_series(reference_config(""));
    REQUIRE(series.size() == 6);
    CHECK(series[0].commodity == "5201");
    CHECK(series[0].values.front() * 1e6 == doctest::Approx(474.32));
    CHECK(series[5].years.back() == 2016);
}

TEST_CASE("raw-trade input reproduces the same series via ingest") {
    PipelineConfig cfg;
    cfg.input_mode = InputMode::RawTrade;
    cfg.input_path = fixtures::data_path("synthetic_trade.csv");
    cfg.chapters_50_67 = true;
    auto series = load_nrca_series(cfg);
    REQUIRE(series.size() == 6);   // the 9999 filler commodity is outside 50-67
    for (const auto& s : series) {
        const auto& want = fixtures::kNrcaTable.at(s.commodity);
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            CHECK(s.values[i] * 1e6 == doctest::Approx(want[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("full reference run emits every table and plot") {
    const std::string dir = "test_out_run";
    fs::remove_all(dir);
    auto bundle = run_pipeline(reference_config(dir));

    CHECK(bundle.results.size() == 6);
    for (const char* tag : {"t1_nrca", "t2_adf_level", "t3_adf_differenced", "t4_identification",
                            "t5_orders", "t6_diagnostics", "t7_forecast", "t8_two_year",
                            "t9_outliers"}) {
        REQUIRE(bundle.tables.count(tag) == 1);
        CHECK(fs::exists(bundle.tables.at(tag)));
    }
    CHECK(bundle.plots.size() == 6);
    for (const auto& p : bundle.plots) CHECK(fs::exists(p));
    CHECK(fs::exists(bundle.manifest));

    // golden column headers
    CHECK(slurp(bundle.tables.at("t1_nrca")).substr(0, 34) == "year,5201,5502,5603,5205,5703,6309");
    CHECK(slurp(bundle.tables.at("t2_adf_level")).rfind("category,tau,p_value,stationary", 0) == 0);
    CHECK(slurp(bundle.tables.at("t3_adf_differenced"))
              .rfind("category,tau,p_value,stationary,period_of_differencing", 0) == 0);
    CHECK(slurp(bundle.tables.at("t4_identification")).rfind("category,method,p,q,score", 0) == 0);
    CHECK(slurp(bundle.tables.at("t5_orders")).rfind("category,p,d,q,aic,converged", 0) == 0);
    CHECK(slurp(bundle.tables.at("t6_diagnostics"))
              .rfind("category,model,to_lag,chi_square,df,p_value", 0) == 0);
    CHECK(slurp(bundle.tables.at("t7_forecast"))
              .rfind("category,actual,forecast,std_error,lo95,hi95,percent_forecast_error", 0) == 0);
    CHECK(slurp(bundle.tables.at("t8_two_year"))
              .rfind("category,forecast_1,direction_1,std_error_1,lo95_1,hi95_1,"
                     "forecast_2,direction_2,std_error_2,lo95_2,hi95_2", 0) == 0);
    CHECK(slurp(bundle.tables.at("t9_outliers")).rfind("category,additive_outlier,level_shift", 0) == 0);

    // T1 reproduces the input values at two decimals
    auto t1 = slurp(bundle.tables.at("t1_nrca"));
    CHECK(t1.find("1996,474.32,73.14,3.91,-102.75,-8.37,23.11") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("two identical runs produce byte-identical tables") {
    const std::string d1 = "test_out_a", d2 = "test_out_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    auto b1 = run_pipeline(reference_config(d1));
    auto b2 = run_pipeline(reference_config(d2));
    for (const auto& [tag, path] : b1.tables) {
        CHECK(slurp(path) == slurp(b2.tables.at(tag)));
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("direction glyphs follow the two-decimal comparison rule") {
    const std::string dir = "test_out_glyph";
    fs::remove_all(dir);
    auto bundle = run_pipeline(reference_config(dir));
    auto t8 = slurp(bundle.tables.at("t8_two_year"));
    // glyphs appear; the carpet row repeats its forecast at two decimals
    CHECK(count_occurrences(t8, "▲") + count_occurrences(t8, "▼") +
              count_occurrences(t8, "■") >= 10);
    for (const auto& r : bundle.results) {
        if (r.commodity != "5703") continue;
        std::istringstream lines(t8);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.rfind("5703,", 0) == 0) {
                // near-flat forecasts: the year-3 step differs from year-2 by < 0.01
                CHECK(std::abs(r.forecasts.entries[2].point - r.forecasts.entries[1].point) < 0.5);
            }
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("forecast plots are structurally sound") {
    Series hist(fixtures::kNrcaTable.at("5502"), 1996);
    ForecastResult fc;
    fc.entries.push_back({1, 2017, 48.0, 8.0, 48.0 - 1.96 * 8.0, 48.0 + 1.96 * 8.0});
    std::vector<OutlierEvent> events{{OutlierKind::LS, 1997, -20.0, 3.2, 1}};

    auto svg = emit_forecast_plot(hist, fc, events, "HS5502", "");
    CHECK(count_occurrences(svg, "ls-marker") == 1);
    CHECK(count_occurrences(svg, "ao-marker") == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // crude balance check on tags
    CHECK(count_occurrences(svg, "<") == count_occurrences(svg, ">"));

    auto svg2 = emit_forecast_plot(hist, fc, {}, "HS6309", "");
    CHECK(count_occurrences(svg2, "ls-marker") == 0);
    CHECK(count_occurrences(svg2, "ao-marker") == 0);

    ForecastResult one;
    one.entries.push_back({1, 2017, 10.0, 1.0, 8.04, 11.96});
    auto svg3 = emit_forecast_plot(Series({1.0, 2.0}, 2015), one, {}, "tiny", "");
    CHECK(svg3.rfind("<?xml", 0) == 0);
    CHECK(svg3.find("</svg>") != std::string::npos);
}

TEST_CASE("config file round trip") {
    const std::string path = "test_cfg.conf";
    {
        std::ofstream out(path);
        out << "# reference-run defaults\n";
        out << "input = " << fixtures::data_path("table1_nrca.csv") << "\n";
        out << "mode = nrca-series\n";
        out << "country = USA\n";
        out << "train_end = 2015\n";
        out << "test_year = 2016\n";
        out << "outlier_critical = 2.5\n";
    }
    auto cfg = load_config(path);
    CHECK(cfg.country == "USA");
    CHECK(cfg.train_end == 2015);
    CHECK(cfg.outlier_critical == doctest::Approx(2.5));
    fs::remove(path);
}
