#include "frontier/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "frontier/dea.hpp"
#include "frontier/diagnostics.hpp"
#include "frontier/errors.hpp"
#include "frontier/report.hpp"

namespace frontier {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* match_string(SignMatch m) {
    switch (m) {
        case SignMatch::Match: return "match";
        case SignMatch::Mismatch: return "mismatch";
        case SignMatch::AmbiguousExpected: return "ambiguous-expected";
    }
    return "match";
}

nlohmann::ordered_json vif_to_json(const VifReport& report) {
    nlohmann::ordered_json j;
    j["threshold"] = report.threshold;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json je;
        je["regressor"] = e.regressor;
        if (std::isfinite(e.vif)) je["vif"] = e.vif;
        else je["vif"] = "infinite";
        je["flagged"] = e.flagged;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

// The score column a DEA model contributes to the second stage.
std::string score_column_name(const std::string& model) { return "DEA_" + model; }

struct DeaOutcome {
    DeaModelSpec spec;
    std::vector<EfficiencyScore> scores;
};

} // namespace

RunOutcome run_pipeline(const RunConfig& cfg) {
    validate_files(cfg);

    RunOutcome out;
    auto fail = [&](const std::string& where, const std::string& message) {
        out.failures.emplace_back(where, message);
    };

    VariableCatalog catalog = load_catalog_json(cfg.catalog_path);
    Dataset raw = load_csv(cfg.data_path, catalog, cfg.missing_policy, cfg.year);

    auto ensure_catalog_entry = [&](const std::string& name) {
        if (!catalog.find(name))
            catalog.add({name, VariableCategory::Exogenous, "score", false, false,
                         ExpectedSign::Ambiguous});
    };

    // Derived productivity column, computed on the raw (untransformed) scale.
    if (cfg.productivity) {
        const auto& pr = *cfg.productivity;
        ensure_catalog_entry(pr.name);
        raw.add_column(pr.name,
                       productivity(raw.column(pr.numerator), raw.column(pr.denominator)));
    }

    Dataset ds = apply_transforms(raw, catalog);

    nlohmann::ordered_json report;
    report["meta"] = {{"timestamp", utc_timestamp()},
                      {"config_digest", fnv1a_hex(cfg.config_bytes)},
                      {"n", ds.n_rows()},
                      {"year", ds.year()},
                      {"seed", cfg.seed},
                      {"dropped_rows", ds.dropped_rows()}};

    // Descriptive statistics.
    try {
        std::vector<std::string> vars =
            cfg.stats_vars.empty() ? ds.column_names() : cfg.stats_vars;
        const auto rows = descriptive_stats(ds, vars);
        auto js = nlohmann::ordered_json::array();
        for (const auto& r : rows)
            js.push_back({{"variable", r.variable},
                          {"min", r.min},
                          {"median", r.median},
                          {"max", r.max}});
        report["descriptive_stats"] = std::move(js);
    } catch (const std::exception& e) {
        fail("descriptive_stats", e.what());
    }

    // Traffic-variability Gini from the per-DMU period counts.
    if (cfg.monthly_counts_path) {
        try {
            const MonthlyCounts mc = load_monthly_counts(*cfg.monthly_counts_path);
            std::map<std::string, double> score;
            for (std::size_t i = 0; i < mc.dmu_ids.size(); ++i)
                score[mc.dmu_ids[i]] = gini(mc.counts[i]);
            std::vector<double> col;
            col.reserve(ds.n_rows());
            for (const auto& id : ds.dmu_ids()) {
                auto it = score.find(id);
                if (it == score.end())
                    throw AnalysisError("monthly counts missing for DMU " + id);
                col.push_back(it->second);
            }
            ensure_catalog_entry("GINI");
            ds.replace_column("GINI", col);
            nlohmann::ordered_json gj;
            gj["periods"] = mc.periods;
            gj["convention"] = "population";
            auto values = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < ds.n_rows(); ++i)
                values.push_back({{"dmu_id", ds.dmu_ids()[i]}, {"gini", col[i]}});
            gj["values"] = std::move(values);
            report["gini"] = std::move(gj);
        } catch (const std::exception& e) {
            fail("gini", e.what());
        }
    }

    // First stage: DEA models. Models that exclude DMUs keep their scores in
    // a side table; second-stage fits on them use a row-filtered dataset.
    std::vector<DeaOutcome> dea_outcomes;
    if (!cfg.dea_models.empty()) {
        auto dj = nlohmann::ordered_json::array();
        for (const auto& model : cfg.dea_models) {
            try {
                DeaOutcome oc;
                oc.spec = model;
                oc.scores = solve_envelopment(model, ds);
                nlohmann::ordered_json mj;
                mj["model"] = model.name;
                mj["rts"] = model.rts == ReturnsToScale::CRS ? "CRS" : "VRS";
                mj["orientation"] =
                    model.orientation == Orientation::Input ? "input" : "output";
                if (!model.excluded_dmus.empty()) mj["excluded"] = model.excluded_dmus;
                auto sj = nlohmann::ordered_json::array();
                for (const auto& s : oc.scores) {
                    nlohmann::ordered_json e;
                    e["dmu_id"] = s.dmu_id;
                    e["score"] = s.score;
                    auto peers = nlohmann::ordered_json::array();
                    for (const auto& [peer, weight] : s.reference_set)
                        peers.push_back({{"peer", peer}, {"lambda", weight}});
                    e["reference_set"] = std::move(peers);
                    sj.push_back(std::move(e));
                }
                mj["scores"] = std::move(sj);
                dj.push_back(std::move(mj));

                const std::string col = score_column_name(model.name);
                ensure_catalog_entry(col);
                if (oc.scores.size() == ds.n_rows()) {
                    std::vector<double> values;
                    values.reserve(oc.scores.size());
                    for (const auto& s : oc.scores) values.push_back(s.score);
                    ds.replace_column(col, values);
                }
                dea_outcomes.push_back(std::move(oc));
            } catch (const std::exception& e) {
                fail("dea:" + model.name, e.what());
            }
        }
        report["dea"] = std::move(dj);
    }

    // Resolve the dataset a regression runs on: full cross-section, or the
    // retained rows of a DEA model that excluded DMUs.
    auto dataset_for = [&](const std::string& dependent) -> Dataset {
        for (const auto& oc : dea_outcomes) {
            if (score_column_name(oc.spec.name) != dependent) continue;
            if (oc.scores.size() == ds.n_rows()) break;
            std::vector<std::string> ids;
            std::vector<double> values;
            for (const auto& s : oc.scores) {
                ids.push_back(s.dmu_id);
                values.push_back(s.score);
            }
            Dataset sub = ds.filter_rows(ids);
            sub.replace_column(dependent, values);
            return sub;
        }
        return ds;
    };

    // Correlation of the independent variables.
    try {
        std::vector<std::string> vars = cfg.correlation_vars;
        if (vars.empty()) {
            std::set<std::string> seen;
            for (const auto& req : cfg.regressions)
                for (const auto& r : req.spec.regressors)
                    if (seen.insert(r).second) vars.push_back(r);
        }
        if (!vars.empty()) {
            const CorrelationMatrix cm = correlation_matrix(ds, vars);
            nlohmann::ordered_json cj;
            cj["variables"] = cm.variables;
            auto rows = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < cm.variables.size(); ++i) {
                auto row = nlohmann::ordered_json::array();
                for (std::size_t j = 0; j < cm.variables.size(); ++j)
                    row.push_back(cm.values(i, j));
                rows.push_back(std::move(row));
            }
            cj["matrix"] = std::move(rows);
            auto pairs = nlohmann::ordered_json::array();
            for (const auto& p : ranked_pairs(cm))
                pairs.push_back({{"a", p.a}, {"b", p.b}, {"r", p.r}});
            cj["top_pairs"] = std::move(pairs);
            report["correlation"] = std::move(cj);
        }
    } catch (const std::exception& e) {
        fail("correlation", e.what());
    }

    // Second stage: regressions, then the selection protocols.
    std::map<std::string, RegressionResult> fits;        // plain fits
    std::map<std::string, RegressionResult> final_fits;  // after elimination, when run
    auto rj = nlohmann::ordered_json::array();
    for (const auto& req : cfg.regressions) {
        try {
            const Dataset sub = dataset_for(req.spec.dependent);
            const RegressionResult res = fit(req.spec, sub, cfg.seed);
            fits.emplace(req.spec.label, res);
            rj.push_back(regression_to_json(res));
        } catch (const std::exception& e) {
            fail("regression:" + req.spec.label, e.what());
        }
    }
    if (!rj.empty()) report["regressions"] = std::move(rj);

    auto tj = nlohmann::ordered_json::array();
    for (const auto& req : cfg.regressions) {
        if (!req.backward_eliminate || !fits.count(req.spec.label)) continue;
        try {
            const Dataset sub = dataset_for(req.spec.dependent);
            const ReductionTrace trace =
                backward_eliminate(req.spec, sub, catalog, cfg.selection.threshold, cfg.seed,
                                   cfg.selection.vif_threshold);
            nlohmann::ordered_json jt;
            jt["label"] = req.spec.label;
            jt["threshold"] = cfg.selection.threshold;
            auto steps = nlohmann::ordered_json::array();
            for (const auto& s : trace.steps) {
                nlohmann::ordered_json js;
                js["removed"] = s.removed_variable;
                js["p_value"] = s.p_value;
                if (s.adj_r2) js["adj_r2"] = *s.adj_r2;
                js["aic"] = s.aic;
                js["log_lik"] = s.log_lik;
                js["vif"] = vif_to_json(s.vif);
                steps.push_back(std::move(js));
            }
            jt["steps"] = std::move(steps);
            jt["final_model"] = regression_to_json(trace.final_model);
            tj.push_back(std::move(jt));
            final_fits.emplace(req.spec.label, trace.final_model);
        } catch (const std::exception& e) {
            fail("backward_eliminate:" + req.spec.label, e.what());
        }
    }
    if (!tj.empty()) report["reduction_traces"] = std::move(tj);

    auto stj = nlohmann::ordered_json::array();
    for (const auto& req : cfg.regressions) {
        if (!req.staged) continue;
        try {
            const Dataset sub = dataset_for(req.spec.dependent);
            const StagedRun run = staged_inclusion(catalog, cfg.selection.groups, req.spec, sub,
                                                   cfg.selection.vif_threshold, cfg.seed);
            nlohmann::ordered_json js;
            js["label"] = req.spec.label;
            auto stages = nlohmann::ordered_json::array();
            for (const auto& st : run.stages) {
                nlohmann::ordered_json jstage;
                jstage["stage"] = st.label;
                jstage["regressors"] = st.regressors;
                jstage["fit"] = regression_to_json(st.fit);
                jstage["vif"] = vif_to_json(st.vif);
                stages.push_back(std::move(jstage));
            }
            js["stages"] = std::move(stages);
            if (run.error) {
                js["error"] = *run.error;
                fail("staged_inclusion:" + req.spec.label, *run.error);
            }
            stj.push_back(std::move(js));
        } catch (const std::exception& e) {
            fail("staged_inclusion:" + req.spec.label, e.what());
        }
    }
    if (!stj.empty()) report["staged_runs"] = std::move(stj);

    // Comparisons use the reduced model when elimination ran, else the plain fit.
    auto resolve_result = [&](const std::string& label) -> const RegressionResult* {
        auto itf = final_fits.find(label);
        if (itf != final_fits.end()) return &itf->second;
        auto itp = fits.find(label);
        if (itp != fits.end()) return &itp->second;
        return nullptr;
    };

    auto cj = nlohmann::ordered_json::array();
    for (const auto& cmp : cfg.comparisons) {
        try {
            std::vector<std::pair<std::string, RegressionResult>> results;
            for (const auto& label : cmp.results) {
                const RegressionResult* r = resolve_result(label);
                if (!r) throw AnalysisError("comparison " + cmp.label +
                                            ": result unavailable: " + label);
                results.emplace_back(label, *r);
            }
            const ComparisonTable table = compare_models(results);
            cj.push_back({{"label", cmp.label}, {"table", comparison_to_json(table)}});
        } catch (const std::exception& e) {
            fail("comparison:" + cmp.label, e.what());
        }
    }
    if (!cj.empty()) report["comparisons"] = std::move(cj);

    auto scj = nlohmann::ordered_json::array();
    for (const auto& req : cfg.regressions) {
        const RegressionResult* r = resolve_result(req.spec.label);
        if (!r) continue;
        try {
            const SignCheck sc = sign_check(*r, catalog);
            nlohmann::ordered_json js;
            js["label"] = req.spec.label;
            auto entries = nlohmann::ordered_json::array();
            for (const auto& e : sc.entries) {
                entries.push_back({{"term", e.term},
                                   {"expected", to_string(e.expected)},
                                   {"coefficient", e.coefficient},
                                   {"match", match_string(e.match)}});
            }
            js["entries"] = std::move(entries);
            scj.push_back(std::move(js));
        } catch (const std::exception& e) {
            fail("sign_check:" + req.spec.label, e.what());
        }
    }
    if (!scj.empty()) report["sign_checks"] = std::move(scj);

    auto ej = nlohmann::ordered_json::array();
    for (const auto& [where, message] : out.failures)
        ej.push_back({{"where", where}, {"message", message}});
    report["errors"] = std::move(ej);

    out.report = std::move(report);
    out.text = render_report_text(out.report, cfg.render);
    out.exit_code = out.failures.empty() ? 0 : 1;
    return out;
}

void write_outputs(const RunOutcome& outcome, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cfg.output_dir);

    {
        std::ofstream out(fs::path(cfg.output_dir) / "report.json");
        if (!out) throw IoError("cannot write report.json");
        out << outcome.report.dump(2) << '\n';
    }
    {
        std::ofstream out(fs::path(cfg.output_dir) / "report.txt");
        if (!out) throw IoError("cannot write report.txt");
        out << outcome.text;
    }
    if (outcome.report.contains("dea")) {
        for (const auto& model : outcome.report.at("dea")) {
            const std::string name = model.at("model").get<std::string>();
            std::ofstream out(fs::path(cfg.output_dir) / ("dea_" + name + "_scores.csv"));
            if (!out) throw IoError("cannot write score CSV for model " + name);
            out << "dmu_id,score\n";
            for (const auto& s : model.at("scores"))
                out << s.at("dmu_id").get<std::string>() << ','
                    << full_precision(s.at("score").get<double>()) << '\n';
        }
    }
    if (outcome.report.contains("correlation")) {
        const auto& corr = outcome.report.at("correlation");
        std::ofstream out(fs::path(cfg.output_dir) / "correlation.csv");
        if (!out) throw IoError("cannot write correlation.csv");
        out << "variable";
        for (const auto& v : corr.at("variables")) out << ',' << v.get<std::string>();
        out << '\n';
        const auto& vars = corr.at("variables");
        const auto& matrix = corr.at("matrix");
        for (std::size_t i = 0; i < vars.size(); ++i) {
            out << vars[i].get<std::string>();
            for (const auto& v : matrix[i]) out << ',' << full_precision(v.get<double>());
            out << '\n';
        }
    }
}

} // namespace frontier
