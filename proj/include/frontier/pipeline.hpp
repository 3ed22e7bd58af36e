#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "frontier/config.hpp"

namespace frontier {

struct RunOutcome {
    nlohmann::ordered_json report;
    std::string text;
    std::vector<std::pair<std::string, std::string>> failures; // (where, message)
    int exit_code = 0; // 0 clean, 1 when any analysis failed
};

// Executes load -> transforms -> descriptive stats -> Gini -> DEA ->
// correlation -> regressions -> selection protocols -> comparison -> sign
// check -> render. Independent analyses that fail are collected into the
// report instead of aborting the run. Throws ConfigError / IoError for
// problems that prevent the run from starting at all.
RunOutcome run_pipeline(const RunConfig& cfg);

// Write report.json, report.txt, per-model score CSVs and the correlation
// matrix CSV into cfg.output_dir (created if needed).
void write_outputs(const RunOutcome& outcome, const RunConfig& cfg);

} // namespace frontier
