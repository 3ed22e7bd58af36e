#include "frontier/selection.hpp"

#include <algorithm>
#include <set>

#include "frontier/errors.hpp"

namespace frontier {

ReductionTrace backward_eliminate(const RegressionSpec& spec, const Dataset& ds,
                                  const VariableCatalog& catalog, double threshold,
                                  std::uint64_t seed, double vif_threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw AnalysisError("backward elimination: threshold must lie in (0,1)");

    ReductionTrace trace;
    RegressionSpec current = spec;
    RegressionResult fitted = fit(current, ds, seed);

    while (current.regressors.size() > 1) {
        // Largest p-value strictly above the threshold; on ties the variable
        // later in the catalog is removed (earlier kept).
        int candidate = -1;
        double worst_p = threshold;
        for (const auto& term : fitted.terms) {
            if (term.name == "INT") continue;
            const auto it =
                std::find(current.regressors.begin(), current.regressors.end(), term.name);
            if (it == current.regressors.end()) continue;
            const bool beats =
                term.p_value > worst_p ||
                (candidate >= 0 && term.p_value == worst_p &&
                 catalog.order_index(term.name) >
                     catalog.order_index(current.regressors[static_cast<std::size_t>(candidate)]));
            if (term.p_value > threshold && beats) {
                worst_p = term.p_value;
                candidate = static_cast<int>(it - current.regressors.begin());
            }
        }
        if (candidate < 0) break;

        ReductionStep step;
        step.removed_variable = current.regressors[static_cast<std::size_t>(candidate)];
        step.p_value = worst_p;
        current.regressors.erase(current.regressors.begin() + candidate);
        fitted = fit(current, ds, seed);
        step.adj_r2 = fitted.adj_r2;
        step.aic = fitted.aic;
        step.log_lik = fitted.log_lik;
        step.vif = vif(ds, current.regressors, vif_threshold);
        trace.steps.push_back(std::move(step));
    }
    trace.final_model = std::move(fitted);
    return trace;
}

StagedRun staged_inclusion(const VariableCatalog& catalog, const StageGroups& groups,
                           const RegressionSpec& spec, const Dataset& ds,
                           double vif_threshold, std::uint64_t seed) {
    const std::set<std::string> universe(spec.regressors.begin(), spec.regressors.end());
    for (const auto& name : spec.regressors)
        if (!catalog.find(name))
            throw AnalysisError("staged inclusion: regressor " + name + " not in catalog");
    auto check_members = [&](const std::vector<std::string>& g, const char* which) {
        for (const auto& name : g)
            if (!universe.count(name))
                throw AnalysisError(std::string("staged inclusion: ") + which + " member " +
                                    name + " is not one of the spec's regressors");
    };
    check_members(groups.dummies, "dummy group");
    check_members(groups.airspace, "airspace group");
    check_members(groups.demand, "demand group");

    // Nested regressor sets, preserving the spec's regressor order.
    std::set<std::string> active;
    for (const auto& name : spec.regressors) {
        const VariableSpec* vs = catalog.find(name);
        if (vs->category == VariableCategory::Endogenous) active.insert(name);
    }
    auto snapshot = [&]() {
        std::vector<std::string> out;
        for (const auto& name : spec.regressors)
            if (active.count(name)) out.push_back(name);
        return out;
    };

    const std::vector<std::pair<std::string, const std::vector<std::string>*>> additions = {
        {"endogenous", nullptr},
        {"+dummies", &groups.dummies},
        {"+airspace", &groups.airspace},
        {"+demand", &groups.demand},
        {"all", nullptr},
    };

    StagedRun run;
    for (std::size_t i = 0; i < additions.size(); ++i) {
        if (additions[i].second)
            for (const auto& name : *additions[i].second) active.insert(name);
        if (additions[i].first == "all")
            for (const auto& name : spec.regressors) active.insert(name);

        StageResult stage;
        stage.label = additions[i].first;
        stage.regressors = snapshot();

        RegressionSpec staged = spec;
        staged.label = spec.label + ":" + stage.label;
        staged.regressors = stage.regressors;
        try {
            stage.fit = fit(staged, ds, seed);
        } catch (const std::exception& e) {
            run.error = std::string(e.what());
            return run;
        }
        stage.vif = vif(ds, stage.regressors, vif_threshold);
        run.stages.push_back(std::move(stage));
    }
    return run;
}

ComparisonTable compare_models(
    const std::vector<std::pair<std::string, RegressionResult>>& results) {
    if (results.size() < 2)
        throw AnalysisError("model comparison: need at least 2 results");
    std::set<std::string> labels;
    for (const auto& [label, result] : results)
        if (!labels.insert(label).second)
            throw AnalysisError("model comparison: duplicate label: " + label);

    ComparisonTable table;
    for (const auto& [label, result] : results)
        for (const auto& term : result.terms)
            if (std::find(table.term_names.begin(), table.term_names.end(), term.name) ==
                table.term_names.end())
                table.term_names.push_back(term.name);

    double best_aic = results.front().second.aic;
    double best_ll = results.front().second.log_lik;
    for (const auto& [label, result] : results) {
        best_aic = std::min(best_aic, result.aic);
        best_ll = std::max(best_ll, result.log_lik);
    }

    table.cells.assign(table.term_names.size(), {});
    for (const auto& [label, result] : results) {
        ComparisonRow row;
        row.label = label;
        row.adj_r2 = result.adj_r2;
        row.aic = result.aic;
        row.log_lik = result.log_lik;
        row.n = result.n;
        row.best_aic = result.aic == best_aic;
        row.best_log_lik = result.log_lik == best_ll;
        table.columns.push_back(std::move(row));

        for (std::size_t t = 0; t < table.term_names.size(); ++t) {
            ComparisonCell cell;
            for (const auto& term : result.terms) {
                if (term.name == table.term_names[t]) {
                    cell.present = true;
                    cell.coefficient = term.coefficient;
                    cell.std_error = term.std_error;
                    cell.stars = term.stars;
                    break;
                }
            }
            table.cells[t].push_back(cell);
        }
    }
    return table;
}

} // namespace frontier
