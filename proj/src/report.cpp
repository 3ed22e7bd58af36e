#include "frontier/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace frontier {

namespace {

const char* kMinus = "\xe2\x88\x92"; // U+2212, the tables' typographic minus

// Code-point count; good enough for column alignment of the glyphs used here.
std::size_t visual_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++w;
    return w;
}

std::string pad_right(const std::string& s, std::size_t width) {
    std::string out = s;
    const std::size_t w = visual_width(s);
    if (w < width) out.append(width - w, ' ');
    return out;
}

std::string format_integer(long long v) { return std::to_string(v); }

} // namespace

std::string format_number(double value, const RenderSettings& settings) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", settings.decimals, value);
    std::string s = buf;
    // Normalize "-0.000" to "0.000".
    if (!s.empty() && s[0] == '-') {
        bool nonzero = false;
        for (char c : s)
            if (c >= '1' && c <= '9') nonzero = true;
        if (!nonzero) s.erase(0, 1);
    }
    if (settings.decimal_separator != '.') {
        for (char& c : s)
            if (c == '.') c = settings.decimal_separator;
    }
    if (!s.empty() && s[0] == '-') s = std::string(kMinus) + s.substr(1);
    return s;
}

std::string format_coefficient(double coefficient, const RenderSettings& settings) {
    return format_number(coefficient, settings);
}

std::string format_se_stars(double std_error, int stars, const RenderSettings& settings) {
    return "(" + format_number(std_error, settings) + ")" + star_string(stars);
}

nlohmann::ordered_json regression_to_json(const RegressionResult& result) {
    nlohmann::ordered_json j;
    j["label"] = result.label;
    j["method"] = to_string(result.method);
    j["dependent"] = result.dependent;
    j["n"] = result.n;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& t : result.terms) {
        nlohmann::ordered_json jt;
        jt["name"] = t.name;
        jt["coefficient"] = t.coefficient;
        jt["std_error"] = t.std_error;
        jt["p_value"] = t.p_value;
        jt["stars"] = t.stars;
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    j["sigma"] = result.sigma;
    if (result.adj_r2) j["adj_r2"] = *result.adj_r2;
    else j["adj_r2"] = nullptr;
    j["log_lik"] = result.log_lik;
    j["aic"] = result.aic;
    j["param_count"] = result.param_count;
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["multistart_disagreement"] = result.multistart_disagreement;
    if (result.lower_bound) j["lower"] = *result.lower_bound;
    if (result.upper_bound) j["upper"] = *result.upper_bound;
    return j;
}

nlohmann::ordered_json comparison_to_json(const ComparisonTable& table) {
    nlohmann::ordered_json j;
    j["terms"] = table.term_names;
    auto cols = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const auto& col = table.columns[c];
        nlohmann::ordered_json jc;
        jc["label"] = col.label;
        auto cells = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < table.term_names.size(); ++t) {
            const auto& cell = table.cells[t][c];
            if (!cell.present) {
                cells.push_back(nullptr);
            } else {
                nlohmann::ordered_json jcell;
                jcell["coefficient"] = cell.coefficient;
                jcell["std_error"] = cell.std_error;
                jcell["stars"] = cell.stars;
                cells.push_back(std::move(jcell));
            }
        }
        jc["cells"] = std::move(cells);
        if (col.adj_r2) jc["adj_r2"] = *col.adj_r2;
        else jc["adj_r2"] = nullptr;
        jc["aic"] = col.aic;
        jc["log_lik"] = col.log_lik;
        jc["n"] = col.n;
        jc["best_aic"] = col.best_aic;
        jc["best_log_lik"] = col.best_log_lik;
        cols.push_back(std::move(jc));
    }
    j["columns"] = std::move(cols);
    return j;
}

namespace {

std::string render_regression_json(const nlohmann::ordered_json& j,
                                   const RenderSettings& settings) {
    std::ostringstream out;
    out << "Regression: " << j.at("label").get<std::string>() << "  (method "
        << j.at("method").get<std::string>() << ", dependent "
        << j.at("dependent").get<std::string>() << ")\n";
    std::size_t name_w = 10;
    for (const auto& t : j.at("terms"))
        name_w = std::max(name_w, visual_width(t.at("name").get<std::string>()) + 2);
    const std::string rule(name_w + 14, '-');
    out << rule << '\n';
    for (const auto& t : j.at("terms")) {
        out << pad_right(t.at("name").get<std::string>(), name_w)
            << format_coefficient(t.at("coefficient").get<double>(), settings) << '\n';
        out << pad_right("", name_w)
            << format_se_stars(t.at("std_error").get<double>(), t.at("stars").get<int>(),
                               settings)
            << '\n';
    }
    out << rule << '\n';
    if (!j.at("adj_r2").is_null())
        out << pad_right("Adj. R\xc2\xb2", name_w)
            << format_number(j.at("adj_r2").get<double>(), settings) << '\n';
    out << pad_right("Akaike", name_w) << format_number(j.at("aic").get<double>(), settings)
        << '\n';
    out << pad_right("Log-Lik.", name_w)
        << format_number(j.at("log_lik").get<double>(), settings) << '\n';
    out << pad_right("N", name_w) << format_integer(j.at("n").get<long long>()) << '\n';
    if (j.contains("multistart_disagreement") && j.at("multistart_disagreement").get<bool>())
        out << "note: multi-start optima disagree beyond tolerance; best optimum reported\n";
    return out.str();
}

std::string render_comparison_json(const nlohmann::ordered_json& j,
                                   const RenderSettings& settings) {
    const auto& terms = j.at("terms");
    const auto& columns = j.at("columns");

    std::size_t name_w = 10;
    for (const auto& t : terms) name_w = std::max(name_w, visual_width(t.get<std::string>()) + 2);

    // Pre-render every cell, then size the columns.
    std::vector<std::vector<std::string>> body(columns.size());
    std::vector<std::size_t> widths(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& col = columns[c];
        widths[c] = visual_width(col.at("label").get<std::string>());
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const auto& cell = col.at("cells")[t];
            std::string coef, se;
            if (!cell.is_null()) {
                coef = format_coefficient(cell.at("coefficient").get<double>(), settings);
                se = format_se_stars(cell.at("std_error").get<double>(),
                                     cell.at("stars").get<int>(), settings);
            }
            body[c].push_back(coef);
            body[c].push_back(se);
            widths[c] = std::max({widths[c], visual_width(coef), visual_width(se)});
        }
        std::string adj = col.at("adj_r2").is_null()
                              ? std::string{}
                              : format_number(col.at("adj_r2").get<double>(), settings);
        std::string aic = format_number(col.at("aic").get<double>(), settings);
        if (col.at("best_aic").get<bool>()) aic += " (best)";
        std::string ll = format_number(col.at("log_lik").get<double>(), settings);
        if (col.at("best_log_lik").get<bool>()) ll += " (best)";
        std::string n = format_integer(col.at("n").get<long long>());
        body[c].push_back(adj);
        body[c].push_back(aic);
        body[c].push_back(ll);
        body[c].push_back(n);
        for (std::size_t r = body[c].size() - 4; r < body[c].size(); ++r)
            widths[c] = std::max(widths[c], visual_width(body[c][r]));
    }

    std::ostringstream out;
    out << pad_right("", name_w);
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << "| " << pad_right(columns[c].at("label").get<std::string>(), widths[c] + 1);
    out << '\n';
    std::size_t total = name_w;
    for (std::size_t c = 0; c < columns.size(); ++c) total += widths[c] + 3;
    out << std::string(total, '-') << '\n';

    std::vector<std::string> footer = {"Adj. R\xc2\xb2", "Akaike", "Log-Lik.", "N"};
    const std::size_t term_rows = terms.size() * 2;
    for (std::size_t r = 0; r < term_rows + footer.size(); ++r) {
        if (r == term_rows) out << std::string(total, '-') << '\n';
        std::string head;
        if (r < term_rows) {
            head = (r % 2 == 0) ? terms[r / 2].get<std::string>() : std::string{};
        } else {
            head = footer[r - term_rows];
        }
        out << pad_right(head, name_w);
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << "| " << pad_right(body[c][r], widths[c] + 1);
        out << '\n';
    }
    return out.str();
}

} // namespace

std::string render_regression_table(const RegressionResult& result,
                                    const RenderSettings& settings) {
    return render_regression_json(regression_to_json(result), settings);
}

std::string render_comparison_table(const ComparisonTable& table,
                                    const RenderSettings& settings) {
    return render_comparison_json(comparison_to_json(table), settings);
}

std::string render_stats_table(const std::vector<StatsRow>& rows,
                               const RenderSettings& settings) {
    std::size_t name_w = 10;
    for (const auto& r : rows) name_w = std::max(name_w, visual_width(r.variable) + 2);
    std::ostringstream out;
    out << pad_right("Indicator", name_w) << pad_right("Min", 14) << pad_right("Median", 14)
        << "Max\n";
    for (const auto& r : rows) {
        out << pad_right(r.variable, name_w) << pad_right(format_number(r.min, settings), 14)
            << pad_right(format_number(r.median, settings), 14)
            << format_number(r.max, settings) << '\n';
    }
    return out.str();
}

std::string render_report_text(const nlohmann::ordered_json& report,
                               const RenderSettings& settings) {
    std::ostringstream out;
    out << "frontier-bench report\n=====================\n";
    if (report.contains("meta")) {
        const auto& meta = report.at("meta");
        out << "generated: " << meta.at("timestamp").get<std::string>() << '\n';
        out << "config digest: " << meta.at("config_digest").get<std::string>() << '\n';
        out << "observations: " << meta.at("n").get<long long>() << '\n';
        if (meta.contains("year") && meta.at("year").get<long long>() != 0)
            out << "year: " << meta.at("year").get<long long>() << '\n';
        out << '\n';
    }
    if (report.contains("descriptive_stats")) {
        out << "Descriptive statistics\n----------------------\n";
        std::vector<StatsRow> rows;
        for (const auto& r : report.at("descriptive_stats")) {
            rows.push_back({r.at("variable").get<std::string>(), r.at("min").get<double>(),
                            r.at("median").get<double>(), r.at("max").get<double>()});
        }
        out << render_stats_table(rows, settings) << '\n';
    }
    if (report.contains("gini")) {
        const auto& g = report.at("gini");
        out << "Traffic variability (Gini, population convention, "
            << g.at("periods").get<long long>() << " periods per DMU)\n";
        for (const auto& e : g.at("values"))
            out << "  " << pad_right(e.at("dmu_id").get<std::string>(), 12)
                << format_number(e.at("gini").get<double>(), settings) << '\n';
        out << '\n';
    }
    if (report.contains("dea")) {
        for (const auto& model : report.at("dea")) {
            out << "DEA scores: " << model.at("model").get<std::string>() << " ("
                << model.at("rts").get<std::string>() << ", "
                << model.at("orientation").get<std::string>() << "-oriented)\n";
            for (const auto& s : model.at("scores"))
                out << "  " << pad_right(s.at("dmu_id").get<std::string>(), 12)
                    << format_number(s.at("score").get<double>(), settings) << '\n';
            out << '\n';
        }
    }
    if (report.contains("correlation")) {
        const auto& corr = report.at("correlation");
        out << "Correlation (|r|-ranked pairs)\n------------------------------\n";
        std::size_t shown = 0;
        for (const auto& p : corr.at("top_pairs")) {
            out << "  " << pad_right(p.at("a").get<std::string>(), 10) << "~ "
                << pad_right(p.at("b").get<std::string>(), 10)
                << format_number(p.at("r").get<double>(), settings) << '\n';
            if (++shown >= 15) break;
        }
        out << '\n';
    }
    if (report.contains("regressions")) {
        for (const auto& r : report.at("regressions"))
            out << render_regression_json(r, settings) << '\n';
    }
    if (report.contains("reduction_traces")) {
        for (const auto& t : report.at("reduction_traces")) {
            out << "Backward elimination: " << t.at("label").get<std::string>()
                << " (threshold " << format_number(t.at("threshold").get<double>(), settings)
                << ")\n";
            int step = 1;
            for (const auto& s : t.at("steps")) {
                out << "  step " << step++ << ": removed "
                    << s.at("removed").get<std::string>() << " (p="
                    << format_number(s.at("p_value").get<double>(), settings)
                    << "), refit aic=" << format_number(s.at("aic").get<double>(), settings)
                    << ", log-lik="
                    << format_number(s.at("log_lik").get<double>(), settings);
                if (s.contains("vif")) {
                    std::vector<std::string> flagged;
                    for (const auto& v : s.at("vif").at("entries"))
                        if (v.at("flagged").get<bool>())
                            flagged.push_back(v.at("regressor").get<std::string>());
                    if (!flagged.empty()) {
                        out << ", VIF flags:";
                        for (const auto& f : flagged) out << ' ' << f;
                    }
                }
                out << '\n';
            }
            if (t.at("steps").empty()) out << "  no variable exceeded the threshold\n";
            out << render_regression_json(t.at("final_model"), settings) << '\n';
        }
    }
    if (report.contains("staged_runs")) {
        for (const auto& run : report.at("staged_runs")) {
            out << "Staged inclusion: " << run.at("label").get<std::string>() << '\n';
            for (const auto& st : run.at("stages")) {
                out << "  " << pad_right(st.at("stage").get<std::string>(), 12) << "k="
                    << st.at("regressors").size();
                out << ", aic="
                    << format_number(st.at("fit").at("aic").get<double>(), settings)
                    << ", log-lik="
                    << format_number(st.at("fit").at("log_lik").get<double>(), settings);
                std::vector<std::string> flagged;
                for (const auto& v : st.at("vif").at("entries"))
                    if (v.at("flagged").get<bool>())
                        flagged.push_back(v.at("regressor").get<std::string>());
                if (!flagged.empty()) {
                    out << ", VIF flags:";
                    for (const auto& f : flagged) out << ' ' << f;
                }
                out << '\n';
            }
            if (run.contains("error"))
                out << "  aborted: " << run.at("error").get<std::string>() << '\n';
            out << '\n';
        }
    }
    if (report.contains("comparisons")) {
        for (const auto& c : report.at("comparisons")) {
            out << "Model comparison: " << c.at("label").get<std::string>() << '\n';
            out << render_comparison_json(c.at("table"), settings) << '\n';
        }
    }
    if (report.contains("sign_checks")) {
        out << "Expected-sign check\n-------------------\n";
        for (const auto& sc : report.at("sign_checks")) {
            out << sc.at("label").get<std::string>() << ":\n";
            for (const auto& e : sc.at("entries")) {
                out << "  " << pad_right(e.at("term").get<std::string>(), 10) << "expected "
                    << pad_right(e.at("expected").get<std::string>(), 10) << "estimated "
                    << format_number(e.at("coefficient").get<double>(), settings) << "  "
                    << e.at("match").get<std::string>() << '\n';
            }
        }
        out << '\n';
    }
    if (report.contains("errors") && !report.at("errors").empty()) {
        out << "Failed analyses\n---------------\n";
        for (const auto& e : report.at("errors"))
            out << "  " << e.at("where").get<std::string>() << ": "
                << e.at("message").get<std::string>() << '\n';
        out << '\n';
    }
    return out.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace frontier
