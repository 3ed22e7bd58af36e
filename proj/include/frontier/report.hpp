#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frontier/dataset.hpp"
#include "frontier/regress.hpp"
#include "frontier/selection.hpp"

namespace frontier {

// How text tables print numbers. The structured JSON report always keeps
// full precision; these settings only shape the derived text views.
struct RenderSettings {
    int decimals = 3;
    char decimal_separator = '.'; // ',' for comma-decimal table typography
};

// Fixed-decimal rendering with a typographic minus sign (U+2212), matching
// the tables the method section prints.
std::string format_number(double value, const RenderSettings& settings);

// Cell pair for one regression term: the coefficient line and the
// "(standard error)" line with significance stars appended.
std::string format_coefficient(double coefficient, const RenderSettings& settings);
std::string format_se_stars(double std_error, int stars, const RenderSettings& settings);

std::string render_regression_table(const RegressionResult& result,
                                    const RenderSettings& settings);
std::string render_comparison_table(const ComparisonTable& table,
                                    const RenderSettings& settings);
std::string render_stats_table(const std::vector<StatsRow>& rows,
                               const RenderSettings& settings);

// JSON fragments of the structured report.
nlohmann::ordered_json regression_to_json(const RegressionResult& result);
nlohmann::ordered_json comparison_to_json(const ComparisonTable& table);

// Derived text view of a full structured report document; a pure function of
// its input, so rendering twice is byte-identical.
std::string render_report_text(const nlohmann::ordered_json& report,
                               const RenderSettings& settings);

// FNV-1a 64-bit digest of raw bytes, hex-encoded; used as the config digest.
std::string fnv1a_hex(const std::string& bytes);

} // namespace frontier
