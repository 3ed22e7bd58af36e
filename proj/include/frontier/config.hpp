#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/dea.hpp"
#include "frontier/regress.hpp"
#include "frontier/report.hpp"
#include "frontier/selection.hpp"

namespace frontier {

// One requested regression, plus the selection protocols to run on it.
struct RegressionRequest {
    RegressionSpec spec;
    bool backward_eliminate = false;
    bool staged = false;
};

struct ComparisonRequest {
    std::string label;
    std::vector<std::string> results; // regression labels
};

struct SelectionSettings {
    double threshold = 0.33;     // backward-elimination p-value threshold
    double vif_threshold = 10.0;
    StageGroups groups;
};

struct ProductivityRequest {
    std::string numerator;   // composite flight hours
    std::string denominator; // ATCO work hours
    std::string name = "PROD";
};

struct RunConfig {
    std::string config_path;
    std::string config_bytes; // raw file content, hashed into the report
    std::string data_path;
    std::string catalog_path;
    std::optional<std::string> monthly_counts_path;
    std::optional<int> year;
    MissingPolicy missing_policy = MissingPolicy::DropRow;
    std::optional<ProductivityRequest> productivity;
    std::vector<std::string> stats_vars;       // empty: all loaded columns
    std::vector<std::string> correlation_vars; // empty: union of regressors
    std::vector<DeaModelSpec> dea_models;
    std::vector<RegressionRequest> regressions;
    std::vector<ComparisonRequest> comparisons;
    SelectionSettings selection;
    std::string output_dir = "out";
    RenderSettings render;
    std::uint64_t seed = 0;
};

// Parse and validate; throws ConfigError on malformed or inconsistent
// content. File existence is checked separately by validate_files.
RunConfig load_run_config(const std::string& path);

// Throws IoError when a referenced input file is missing.
void validate_files(const RunConfig& cfg);

} // namespace frontier
