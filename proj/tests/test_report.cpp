#include <doctest.h>

#include <string>

#include "frontier/report.hpp"

using namespace frontier;

TEST_CASE("coefficient and se cells reproduce the published typography") {
    RenderSettings dot;
    RenderSettings comma;
    comma.decimal_separator = ',';

    // A benchmark-style GINI row in both separator modes; the minus is U+2212.
    CHECK(format_coefficient(-3.069, dot) == "\xe2\x88\x92" "3.069");
    CHECK(format_se_stars(0.597, 3, dot) == "(0.597)***");
    CHECK(format_coefficient(-3.069, comma) == "\xe2\x88\x92" "3,069");
    CHECK(format_se_stars(0.597, 3, comma) == "(0,597)***");

    CHECK(format_se_stars(0.5, 0, dot) == "(0.500)");
    CHECK(format_number(0.0, dot) == "0.000");
    CHECK(format_number(-0.0001, dot) == "0.000"); // no negative zero
}

TEST_CASE("regression table renders coefficient over se with stars") {
    RegressionResult res;
    res.label = "demo";
    res.method = RegressionMethod::OLS;
    res.dependent = "PROD";
    res.terms = {{"INT", -2.69, 1.684, 0.2, 0}, {"GINI", -3.069, 0.597, 0.0001, 3}};
    res.adj_r2 = 0.86;
    res.log_lik = 39.02;
    res.aic = -52.04;
    res.param_count = 13;
    res.n = 38;

    RenderSettings comma;
    comma.decimal_separator = ',';
    const std::string table = render_regression_table(res, comma);
    const auto coef_pos = table.find("\xe2\x88\x92" "3,069");
    const auto se_pos = table.find("(0,597)***");
    REQUIRE(coef_pos != std::string::npos);
    REQUIRE(se_pos != std::string::npos);
    CHECK(coef_pos < se_pos);
    // The se line directly follows the coefficient line.
    const auto newline = table.find('\n', coef_pos);
    CHECK(se_pos < table.find('\n', newline + 1));

    CHECK(table.find("Akaike") != std::string::npos);
    CHECK(table.find("Log-Lik.") != std::string::npos);
    CHECK(table.find("N") != std::string::npos);
    CHECK(table.find("38") != std::string::npos);
    CHECK(table.find("Adj. R\xc2\xb2") != std::string::npos);
}

TEST_CASE("rendering is deterministic and round-trip stable") {
    nlohmann::ordered_json report;
    report["meta"] = {{"timestamp", "2026-01-01T00:00:00Z"},
                      {"config_digest", "abc"},
                      {"n", 5},
                      {"year", 2016}};
    report["descriptive_stats"] = nlohmann::ordered_json::array(
        {{{"variable", "GINI"}, {"min", 0.025}, {"median", 0.104}, {"max", 0.255}}});
    RenderSettings settings;
    const std::string once = render_report_text(report, settings);
    const std::string twice = render_report_text(report, settings);
    CHECK(once == twice);

    // Round-trip through serialized JSON leaves the text identical.
    const auto reparsed = nlohmann::ordered_json::parse(report.dump());
    CHECK(render_report_text(reparsed, settings) == once);
}

TEST_CASE("rendered numbers equal structured values after rounding") {
    RenderSettings s;
    s.decimals = 2;
    const double value = 0.104999;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    CHECK(format_number(value, s) == std::string(buf));
}

TEST_CASE("config digest changes with any byte") {
    const std::string base = "{\"data\": \"x.csv\"}";
    std::string mutated = base;
    mutated[3] = 'A';
    CHECK(fnv1a_hex(base) != fnv1a_hex(mutated));
    CHECK(fnv1a_hex(base) == fnv1a_hex(base));
    CHECK(fnv1a_hex(base).size() == 16);
}
