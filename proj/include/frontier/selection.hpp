#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/diagnostics.hpp"
#include "frontier/regress.hpp"

namespace frontier {

struct ReductionStep {
    std::string removed_variable;
    double p_value = 0.0;            // at the moment of removal
    std::optional<double> adj_r2;    // metrics of the refit model
    double aic = 0.0;
    double log_lik = 0.0;
    VifReport vif;                   // of the refit regressor set
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    RegressionResult final_model;
};

// Backward elimination: repeatedly drop the regressor with the largest
// p-value strictly above the threshold, refit, stop when everything left is
// at or below the threshold or a single regressor remains. The intercept is
// never removed; p-value ties are broken by catalog order (the later entry
// goes first). Each refit carries its own VIF report.
ReductionTrace backward_eliminate(const RegressionSpec& spec, const Dataset& ds,
                                  const VariableCatalog& catalog, double threshold = 0.33,
                                  std::uint64_t seed = 0, double vif_threshold = 10.0);

struct StageGroups {
    std::vector<std::string> dummies;  // stage 2 additions (may be empty)
    std::vector<std::string> airspace; // stage 3
    std::vector<std::string> demand;   // stage 4
};

struct StageResult {
    std::string label;
    std::vector<std::string> regressors;
    RegressionResult fit;
    VifReport vif;
};

struct StagedRun {
    std::vector<StageResult> stages;  // five on success, fewer if a fit failed
    std::optional<std::string> error; // message of the failing stage
};

// Five nested fits: endogenous factors only, then the configured dummy
// group, then airspace data, then demand characteristics, then everything.
// A VIF report accompanies every stage; flags warn but never abort.
StagedRun staged_inclusion(const VariableCatalog& catalog, const StageGroups& groups,
                           const RegressionSpec& spec, const Dataset& ds,
                           double vif_threshold = 10.0, std::uint64_t seed = 0);

struct ComparisonCell {
    bool present = false;
    double coefficient = 0.0;
    double std_error = 0.0;
    int stars = 0;
};

struct ComparisonRow {
    std::string label;
    std::optional<double> adj_r2;
    double aic = 0.0;
    double log_lik = 0.0;
    std::size_t n = 0;
    bool best_aic = false;
    bool best_log_lik = false;
};

struct ComparisonTable {
    std::vector<std::string> term_names;            // union, aligned by name
    std::vector<ComparisonRow> columns;             // one per labeled result
    std::vector<std::vector<ComparisonCell>> cells; // [term][column]
};

ComparisonTable compare_models(
    const std::vector<std::pair<std::string, RegressionResult>>& results);

} // namespace frontier
