#include "frontier/dea.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frontier/errors.hpp"
#include "frontier/lp.hpp"

namespace frontier {

namespace {

constexpr double kSnapTol = 1e-9;
constexpr double kLambdaTol = 1e-9;

struct Panel {
    std::vector<std::string> ids;            // retained DMUs, dataset order
    std::vector<std::vector<double>> inputs;  // [input][dmu]
    std::vector<std::vector<double>> outputs; // [output][dmu]
};

Panel build_panel(const DeaModelSpec& spec, const Dataset& ds) {
    if (spec.inputs.empty() || spec.outputs.empty())
        throw AnalysisError("DEA model " + spec.name + ": inputs and outputs must be non-empty");
    for (const auto& in : spec.inputs)
        for (const auto& out : spec.outputs)
            if (in == out)
                throw AnalysisError("DEA model " + spec.name + ": variable " + in +
                                    " used as both input and output");

    std::set<std::string> excluded(spec.excluded_dmus.begin(), spec.excluded_dmus.end());
    for (const auto& id : excluded)
        if (std::find(ds.dmu_ids().begin(), ds.dmu_ids().end(), id) == ds.dmu_ids().end())
            throw AnalysisError("DEA model " + spec.name + ": unknown excluded dmu_id: " + id);

    Panel p;
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        if (excluded.count(ds.dmu_ids()[r])) continue;
        p.ids.push_back(ds.dmu_ids()[r]);
        rows.push_back(r);
    }
    if (p.ids.empty())
        throw AnalysisError("DEA model " + spec.name + ": no DMUs left after exclusions");

    auto gather = [&](const std::vector<std::string>& names,
                      std::vector<std::vector<double>>& dst, const char* kind) {
        for (const auto& name : names) {
            const auto& col = ds.column(name);
            std::vector<double> vals;
            vals.reserve(rows.size());
            for (std::size_t r : rows) {
                if (col[r] <= 0.0)
                    throw AnalysisError("DEA model " + spec.name + ": non-positive " +
                                        kind + " value in " + name + " for DMU " +
                                        ds.dmu_ids()[r]);
                vals.push_back(col[r]);
            }
            dst.push_back(std::move(vals));
        }
    };
    gather(spec.inputs, p.inputs, "input");
    gather(spec.outputs, p.outputs, "output");
    return p;
}

// One envelopment program, normalized by the evaluated DMU's own row so the
// coefficient of DMU o is exactly 1 in every constraint.
EfficiencyScore score_one(const DeaModelSpec& spec, const Panel& p, std::size_t o) {
    const std::size_t n = p.ids.size();
    const std::size_t ni = p.inputs.size();
    const std::size_t no = p.outputs.size();
    const bool vrs = spec.rts == ReturnsToScale::VRS;
    const bool input_oriented = spec.orientation == Orientation::Input;

    const std::size_t rows = ni + no + (vrs ? 1 : 0);
    LpProblem lp;
    lp.objective.assign(n + 1, 0.0);
    lp.objective[0] = 1.0; // radial factor
    lp.maximize = !input_oriented;
    lp.constraints = Matrix(rows, n + 1, 0.0);
    lp.senses.assign(rows, ConstraintSense::Le);
    lp.rhs.assign(rows, 0.0);

    for (std::size_t i = 0; i < ni; ++i) {
        const double xo = p.inputs[i][o];
        for (std::size_t j = 0; j < n; ++j) lp.constraints(i, j + 1) = p.inputs[i][j] / xo;
        if (input_oriented) {
            lp.constraints(i, 0) = -1.0; // sum lambda x / xo <= theta
            lp.rhs[i] = 0.0;
        } else {
            lp.rhs[i] = 1.0; // sum lambda x / xo <= 1
        }
        lp.senses[i] = ConstraintSense::Le;
    }
    for (std::size_t r = 0; r < no; ++r) {
        const std::size_t row = ni + r;
        const double yo = p.outputs[r][o];
        for (std::size_t j = 0; j < n; ++j) lp.constraints(row, j + 1) = p.outputs[r][j] / yo;
        if (input_oriented) {
            lp.rhs[row] = 1.0; // sum lambda y / yo >= 1
        } else {
            lp.constraints(row, 0) = -1.0; // sum lambda y / yo >= phi
            lp.rhs[row] = 0.0;
        }
        lp.senses[row] = ConstraintSense::Ge;
    }
    if (vrs) {
        const std::size_t row = ni + no;
        for (std::size_t j = 0; j < n; ++j) lp.constraints(row, j + 1) = 1.0;
        lp.senses[row] = ConstraintSense::Eq;
        lp.rhs[row] = 1.0;
    }

    const LpSolution sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw AnalysisError("DEA model " + spec.name + ": LP " +
                            (sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded") +
                            " for DMU " + p.ids[o]);

    double score = input_oriented ? sol.x[0] : 1.0 / sol.x[0];
    if (std::fabs(score - 1.0) <= kSnapTol) score = 1.0;

    EfficiencyScore es;
    es.dmu_id = p.ids[o];
    es.score = score;
    for (std::size_t j = 0; j < n; ++j)
        if (sol.x[j + 1] > kLambdaTol) es.reference_set.emplace_back(p.ids[j], sol.x[j + 1]);
    return es;
}

} // namespace

std::vector<EfficiencyScore> solve_envelopment(const DeaModelSpec& spec, const Dataset& ds,
                                               const DeaSolveOptions& options) {
    const Panel panel = build_panel(spec, ds);
    const std::size_t n = panel.ids.size();
    std::vector<EfficiencyScore> scores(n);
    std::vector<std::string> errors(n);

    if (options.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long j = 0; j < static_cast<long long>(n); ++j) {
            const auto o = static_cast<std::size_t>(j);
            try {
                scores[o] = score_one(spec, panel, o);
            } catch (const std::exception& e) {
                errors[o] = e.what();
            }
        }
    } else {
        for (std::size_t o = 0; o < n; ++o) {
            try {
                scores[o] = score_one(spec, panel, o);
            } catch (const std::exception& e) {
                errors[o] = e.what();
            }
        }
    }
    for (const auto& err : errors)
        if (!err.empty()) throw AnalysisError(err);
    return scores;
}

std::vector<EfficiencyScore> solve_envelopment_reference(const DeaModelSpec& spec,
                                                         const Dataset& ds) {
    const Panel panel = build_panel(spec, ds);
    std::vector<EfficiencyScore> scores;
    scores.reserve(panel.ids.size());
    for (std::size_t o = 0; o < panel.ids.size(); ++o)
        scores.push_back(score_one(spec, panel, o));
    return scores;
}

} // namespace frontier
