#pragma once

#include <map>
#include <string>
#include <vector>

#include "tradecast/nrca.hpp"
#include "tradecast/report.hpp"

namespace tradecast {

enum class InputMode { RawTrade, NrcaSeries };

struct PipelineConfig {
    InputMode input_mode = InputMode::NrcaSeries;
    std::string input_path;
    std::string country = "USA";
    int window_start = 2010;
    int window_end = 2016;
    int min_run = 3;
    double threshold = 0.0;
    int train_end = 2015;
    int test_year = 2016;
    int horizon = 3;               // steps from the training origin
    double alpha = 0.05;
    int adf_lags = 0;
    int max_d = 2;
    int p_max = 5;
    int q_max = 5;
    int lb_lag = 6;
    double outlier_critical = 2.5;
    int max_events = 5;
    bool chapters_50_67 = false;   // restrict emitted commodity series to HS 50-67
    double display_scale = 1e6;    // NRCA values are modeled in per-million units
    bool emit_plots = true;
    std::string out_dir = "out";
    TableFormat format = TableFormat::Csv;
    std::string format_name = "csv";
    long seed = 0;                 // echoed in the manifest; tables are deterministic
};

/// Parse a key=value config file ('#' comments). Unknown keys are an error.
PipelineConfig load_config(const std::string& path);

/// Apply one key=value assignment to an existing config.
void apply_config_entry(PipelineConfig& cfg, const std::string& key, const std::string& value);

struct ReportBundle {
    std::map<std::string, std::string> tables;   // T1..T9 -> path
    std::vector<std::string> plots;
    std::string manifest;
    std::vector<CategoryResult> results;
    std::vector<NrcaSeries> series;              // raw units
};

/// Load NRCA series from either input mode. Raw-trade mode runs
/// ingest -> panel -> NRCA for the focal country over every commodity.
std::vector<NrcaSeries> load_nrca_series(const PipelineConfig& cfg);

/// End-to-end run: screen, then per category difference/identify/fit/
/// diagnose/forecast/detect, then emit tables T1-T9, plots, and a manifest
/// under cfg.out_dir.
ReportBundle run_pipeline(const PipelineConfig& cfg);

}  // namespace tradecast
