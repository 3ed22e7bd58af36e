// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line with its runtime. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "frontier/dataset.hpp"
#include "frontier/dea.hpp"
#include "frontier/diagnostics.hpp"
#include "frontier/regress.hpp"
#include "frontier/report.hpp"
#include "frontier/selection.hpp"
#include "oracles.hpp"

using namespace frontier;

namespace {

struct Check {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

Dataset column_dataset(const std::vector<std::pair<std::string, std::vector<double>>>& cols) {
    Dataset ds;
    const std::size_t n = cols.front().second.size();
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("U" + std::to_string(i));
    ds.set_dmu_ids(ids);
    for (const auto& [name, values] : cols) ds.add_column(name, values);
    return ds;
}

// Shared DEA-like synthetic family: dependent strictly inside (0,1).
struct InteriorSample {
    Dataset ds;
    RegressionSpec ols;
};

InteriorSample interior_sample(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n = 40;
    std::vector<double> x1(n), x2(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = g(rng);
        x2[i] = g(rng);
        y[i] = 0.5 + 0.3 * std::tanh(0.6 * x1[i] - 0.4 * x2[i] + 0.3 * g(rng));
        y[i] = std::min(std::max(y[i], 1e-6), 1.0 - 1e-6);
    }
    InteriorSample s;
    s.ds = column_dataset({{"x1", x1}, {"x2", x2}, {"y", y}});
    s.ols.label = "acc";
    s.ols.dependent = "y";
    s.ols.regressors = {"x1", "x2"};
    return s;
}

// --- criteria ---------------------------------------------------------------

void criterion_tobit_equals_ols(Check& c) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const InteriorSample s = interior_sample(seed);
        auto tspec = s.ols;
        tspec.method = RegressionMethod::Tobit;
        tspec.lower_bound = 0.0;
        tspec.upper_bound = 1.0;
        const auto ols = fit_ols(s.ols, s.ds);
        const auto tob = fit_tobit(tspec, s.ds);
        for (std::size_t j = 0; j < ols.terms.size(); ++j) {
            const double rel =
                std::fabs(tob.terms[j].coefficient - ols.terms[j].coefficient) /
                (1.0 + std::fabs(ols.terms[j].coefficient));
            c.require(rel <= 1e-4, "seed " + std::to_string(seed) + " term " +
                                       ols.terms[j].name + " rel diff " + std::to_string(rel));
        }
    }
}

void criterion_truncated_equals_ols(Check& c) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const InteriorSample s = interior_sample(seed);
        auto tspec = s.ols;
        tspec.method = RegressionMethod::Truncated; // both bounds infinite
        const auto ols = fit_ols(s.ols, s.ds);
        const auto trunc = fit_truncated(tspec, s.ds, seed);
        for (std::size_t j = 0; j < ols.terms.size(); ++j) {
            const double diff =
                std::fabs(trunc.terms[j].coefficient - ols.terms[j].coefficient);
            c.require(diff <= 1e-8, "seed " + std::to_string(seed) + " term " +
                                        ols.terms[j].name + " diff " + std::to_string(diff));
        }
    }
}

Dataset dea_dataset(std::mt19937_64& rng, std::size_t n, std::size_t ni, std::size_t no) {
    std::uniform_real_distribution<double> unif(0.5, 10.0);
    Dataset ds;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("D" + std::to_string(i));
    ds.set_dmu_ids(ids);
    for (std::size_t c = 0; c < ni; ++c) {
        std::vector<double> col(n);
        for (auto& v : col) v = unif(rng);
        ds.add_column("x" + std::to_string(c), std::move(col));
    }
    for (std::size_t c = 0; c < no; ++c) {
        std::vector<double> col(n);
        for (auto& v : col) v = unif(rng);
        ds.add_column("y" + std::to_string(c), std::move(col));
    }
    return ds;
}

DeaModelSpec dea_spec(std::size_t ni, std::size_t no,
                      ReturnsToScale rts = ReturnsToScale::CRS) {
    DeaModelSpec spec;
    spec.name = "acc";
    for (std::size_t c = 0; c < ni; ++c) spec.inputs.push_back("x" + std::to_string(c));
    for (std::size_t c = 0; c < no; ++c) spec.outputs.push_back("y" + std::to_string(c));
    spec.rts = rts;
    return spec;
}

void criterion_dea_oracle(Check& c) {
    // Analytic single-ratio case, exact.
    {
        Dataset ds;
        ds.set_dmu_ids({"A", "B"});
        ds.add_column("x0", {1.0, 1.0});
        ds.add_column("y0", {2.0, 1.0});
        const auto scores = solve_envelopment(dea_spec(1, 1), ds);
        c.require(scores[0].score == 1.0 && scores[1].score == 0.5,
                  "analytic case not exact");
    }
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        std::mt19937_64 rng(seed * 7919);
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 5); // 2..6 DMUs
        const std::size_t dims = 2 + static_cast<std::size_t>(rng() % 2); // 2..3 total
        const std::size_t ni = 1 + static_cast<std::size_t>(rng() % (dims - 1));
        const std::size_t no = dims - ni;
        const Dataset ds = dea_dataset(rng, n, ni, no);
        const auto spec = dea_spec(ni, no);
        const auto scores = solve_envelopment(spec, ds);

        for (std::size_t o = 0; o < n; ++o) {
            // Raw envelopment LP for the oracle: vars [theta, lambda...].
            const std::size_t rows = ni + no;
            Matrix a(rows, n + 1, 0.0);
            std::vector<ConstraintSense> senses(rows);
            std::vector<double> b(rows, 0.0);
            for (std::size_t i = 0; i < ni; ++i) {
                const auto& col = ds.column("x" + std::to_string(i));
                a(i, 0) = -col[o];
                for (std::size_t j = 0; j < n; ++j) a(i, j + 1) = col[j];
                senses[i] = ConstraintSense::Le;
            }
            for (std::size_t r = 0; r < no; ++r) {
                const auto& col = ds.column("y" + std::to_string(r));
                for (std::size_t j = 0; j < n; ++j) a(ni + r, j + 1) = col[j];
                senses[ni + r] = ConstraintSense::Ge;
                b[ni + r] = col[o];
            }
            std::vector<double> obj(n + 1, 0.0);
            obj[0] = 1.0;
            const auto want = oracle::lp_min_by_vertex_enumeration(obj, a, senses, b);
            c.require(want.feasible, "oracle infeasible?");
            c.require(std::fabs(scores[o].score - want.objective) <= 1e-6,
                      "seed " + std::to_string(seed) + " dmu " + std::to_string(o) +
                          ": score " + std::to_string(scores[o].score) + " vs oracle " +
                          std::to_string(want.objective));
        }
    }
}

void criterion_dea_invariants(Check& c) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed * 104729);
        const std::size_t n = 3 + static_cast<std::size_t>(rng() % 10);
        const std::size_t ni = 1 + static_cast<std::size_t>(rng() % 3);
        const std::size_t no = 1 + static_cast<std::size_t>(rng() % 3);
        const Dataset ds = dea_dataset(rng, n, ni, no);
        const auto crs = solve_envelopment(dea_spec(ni, no), ds);

        double maxscore = 0.0;
        for (const auto& s : crs) {
            c.require(s.score > 0.0 && s.score <= 1.0,
                      "seed " + std::to_string(seed) + ": score outside (0,1]");
            maxscore = std::max(maxscore, s.score);
        }
        c.require(maxscore == 1.0, "seed " + std::to_string(seed) + ": frontier max != 1");

        // CRS units invariance under a random positive column rescaling.
        std::uniform_real_distribution<double> scale(1e-3, 1e3);
        Dataset scaled;
        scaled.set_dmu_ids(ds.dmu_ids());
        const std::size_t which_in = rng() % ni;
        const std::size_t which_out = rng() % no;
        const double cx = scale(rng);
        const double cy = scale(rng);
        for (const auto& name : ds.column_names()) {
            std::vector<double> col = ds.column(name);
            if (name == "x" + std::to_string(which_in))
                for (auto& v : col) v *= cx;
            if (name == "y" + std::to_string(which_out))
                for (auto& v : col) v *= cy;
            scaled.add_column(name, std::move(col));
        }
        const auto crs2 = solve_envelopment(dea_spec(ni, no), scaled);
        for (std::size_t o = 0; o < n; ++o)
            c.require(std::fabs(crs2[o].score - crs[o].score) <= 1e-9,
                      "seed " + std::to_string(seed) + ": units invariance violated");

        const auto vrs = solve_envelopment(dea_spec(ni, no, ReturnsToScale::VRS), ds);
        for (std::size_t o = 0; o < n; ++o)
            c.require(vrs[o].score >= crs[o].score - 1e-9,
                      "seed " + std::to_string(seed) + ": VRS < CRS");
    }
}

void criterion_gradients(Check& c) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed * 31);
        std::normal_distribution<double> g(0.0, 1.0);
        std::uniform_real_distribution<double> bdist(-1.0, 1.0);
        std::uniform_real_distribution<double> sdist(0.4, 2.0);
        const std::size_t n = 30;
        std::vector<double> x(n), yc(n), yt(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = g(rng);
            const double star = 0.3 + 0.8 * x[i] + 0.5 * g(rng);
            yc[i] = std::min(std::max(star, 0.0), 1.0);
            yt[i] = 0.5 + 0.35 * std::tanh(star);
        }
        RegressionSpec s;
        s.dependent = "yc";
        s.regressors = {"x"};
        const Dataset ds = column_dataset({{"x", x}, {"yc", yc}, {"yt", yt}});
        const Matrix design = build_design(s, ds);

        for (int point = 0; point < 20; ++point) {
            const std::vector<double> beta = {bdist(rng), bdist(rng)};
            const double sigma = sdist(rng);
            const double h = 1e-6;
            const auto gc = censored_loglik_gradient(design, yc, 0.0, 1.0, beta, sigma);
            const auto gt = truncated_loglik_gradient(design, yt, 0.0, 1.0, beta, sigma);
            for (std::size_t j = 0; j < 3; ++j) {
                std::vector<double> bp = beta, bm = beta;
                double sp = sigma, sm = sigma;
                if (j < 2) {
                    bp[j] += h;
                    bm[j] -= h;
                } else {
                    sp += h;
                    sm -= h;
                }
                const double fdc = (censored_loglik(design, yc, 0.0, 1.0, bp, sp) -
                                    censored_loglik(design, yc, 0.0, 1.0, bm, sm)) /
                                   (2.0 * h);
                const double fdt = (truncated_loglik(design, yt, 0.0, 1.0, bp, sp) -
                                    truncated_loglik(design, yt, 0.0, 1.0, bm, sm)) /
                                   (2.0 * h);
                c.require(std::fabs(gc[j] - fdc) <= 1e-5 * (1.0 + std::fabs(gc[j])),
                          "censored gradient mismatch, seed " + std::to_string(seed));
                c.require(std::fabs(gt[j] - fdt) <= 1e-5 * (1.0 + std::fabs(gt[j])),
                          "truncated gradient mismatch, seed " + std::to_string(seed));
            }
        }
    }
}

void criterion_ols_oracle(Check& c) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed * 127);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        const std::size_t k = 2 + static_cast<std::size_t>(rng() % 7); // regressors, <= 8
        const std::size_t n = std::max<std::size_t>(2 * k + 4, 10 + rng() % 41);
        std::vector<std::vector<double>> cols(k, std::vector<double>(n));
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double signal = 0.2;
            for (std::size_t j = 0; j < k; ++j) {
                cols[j][i] = unif(rng);
                signal += (0.3 + 0.1 * static_cast<double>(j)) * cols[j][i];
            }
            y[i] = signal + 0.5 * unif(rng);
        }
        std::vector<std::pair<std::string, std::vector<double>>> named;
        RegressionSpec spec;
        spec.label = "acc";
        spec.dependent = "y";
        for (std::size_t j = 0; j < k; ++j) {
            named.emplace_back("v" + std::to_string(j), cols[j]);
            spec.regressors.push_back("v" + std::to_string(j));
        }
        named.emplace_back("y", y);
        const Dataset ds = column_dataset(named);
        const auto res = fit_ols(spec, ds);
        const auto beta = oracle::ols_by_cofactor_inversion(build_design(spec, ds), y);
        for (std::size_t j = 0; j < beta.size(); ++j)
            c.require(std::fabs(res.terms[j].coefficient - beta[j]) <=
                          1e-10 * (1.0 + std::fabs(beta[j])),
                      "seed " + std::to_string(seed) + " coefficient " + std::to_string(j));
    }
}

void criterion_backward_elimination(Check& c) {
    VariableCatalog cat;
    cat.add({"X1", VariableCategory::Exogenous, "", false, false, ExpectedSign::Ambiguous});
    cat.add({"X2", VariableCategory::Exogenous, "", false, false, ExpectedSign::Ambiguous});
    int eliminated = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::mt19937_64 rng(40000 + rep);
        std::normal_distribution<double> g(0.0, 1.0);
        const std::size_t n = 200;
        std::vector<double> x1(n), x2(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x1[i] = g(rng);
            x2[i] = g(rng); // planted pure-noise regressor
            y[i] = 2.0 * x1[i] + g(rng);
        }
        const Dataset ds = column_dataset({{"X1", x1}, {"X2", x2}, {"y", y}});
        RegressionSpec spec;
        spec.label = "acc7";
        spec.dependent = "y";
        spec.regressors = {"X1", "X2"};
        const auto trace = backward_eliminate(spec, ds, cat, 0.33);
        for (const auto& term : trace.final_model.terms) {
            if (term.name == "INT") continue;
            c.require(term.p_value <= 0.33, "final model keeps p > 0.33");
        }
        bool gone = true;
        for (const auto& term : trace.final_model.terms)
            if (term.name == "X2") gone = false;
        if (gone) ++eliminated;
    }
    c.require(eliminated >= 95, "pure-noise regressor eliminated in only " +
                                    std::to_string(eliminated) +
                                    "/100 replications (threshold-0.33 removal of a null "
                                    "regressor is a ~67% event; see decisions ledger)");
}

void criterion_staged_inclusion(Check& c) {
    std::mt19937_64 rng(808);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n = 60;
    std::vector<double> endo(n), dum(n), air(n), dem(n), res(n), wealth(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        endo[i] = g(rng);
        dum[i] = (g(rng) > 0.0) ? 1.0 : 0.0;
        air[i] = g(rng);
        dem[i] = g(rng);
        res[i] = g(rng);
        wealth[i] = res[i] + 0.05 * g(rng); // r > 0.95
        y[i] = 0.5 * endo[i] + 0.2 * dem[i] + 0.1 * res[i] + g(rng);
    }
    VariableCatalog cat;
    cat.add({"ENDO", VariableCategory::Endogenous, "", false, false, ExpectedSign::Ambiguous});
    cat.add({"DUM", VariableCategory::PartlyExogenous, "0/1", true, false,
             ExpectedSign::Ambiguous});
    cat.add({"AIR", VariableCategory::PartlyExogenous, "", false, false,
             ExpectedSign::Ambiguous});
    cat.add({"DEM", VariableCategory::PartlyExogenous, "", false, false,
             ExpectedSign::Ambiguous});
    cat.add({"RES", VariableCategory::Exogenous, "", false, false, ExpectedSign::Positive});
    cat.add({"WEALTH", VariableCategory::Exogenous, "", false, false, ExpectedSign::Positive});

    const Dataset ds = column_dataset({{"ENDO", endo},
                                       {"DUM", dum},
                                       {"AIR", air},
                                       {"DEM", dem},
                                       {"RES", res},
                                       {"WEALTH", wealth},
                                       {"y", y}});
    RegressionSpec spec;
    spec.label = "acc8";
    spec.dependent = "y";
    spec.regressors = {"ENDO", "DUM", "AIR", "DEM", "RES", "WEALTH"};
    StageGroups groups;
    groups.dummies = {"DUM"};
    groups.airspace = {"AIR"};
    groups.demand = {"DEM"};
    const auto run = staged_inclusion(cat, groups, spec, ds, 10.0);
    c.require(!run.error, "staged run aborted");
    c.require(run.stages.size() == 5, "expected 5 stages");
    for (std::size_t i = 1; i < run.stages.size(); ++i) {
        const auto& prev = run.stages[i - 1].regressors;
        const auto& cur = run.stages[i].regressors;
        for (const auto& r : prev)
            c.require(std::find(cur.begin(), cur.end(), r) != cur.end(),
                      "stage sets not nested");
    }
    // A VIF report accompanies every stage; the collinear pair flags exactly
    // when both enter (stage 5).
    for (std::size_t i = 0; i < run.stages.size(); ++i) {
        const auto& st = run.stages[i];
        const bool computable = st.regressors.size() >= 2;
        c.require(computable ? !st.vif.entries.empty() : !st.vif.note.empty(),
                  "missing VIF report at stage " + st.label);
        bool flagged = false;
        for (const auto& e : st.vif.entries) flagged = flagged || e.flagged;
        if (i + 1 < run.stages.size())
            c.require(!flagged, "VIF flag before the collinear pair entered");
        else
            c.require(flagged, "VIF flag missing at the stage where both entered");
    }
}

void criterion_diagnostics_closed_forms(Check& c) {
    c.require(gini({3, 3, 3, 3}) == 0.0, "gini equality case not exact");
    c.require(gini({0, 0, 0, 12}) == 0.75, "gini single-holder case not exact");

    const Dataset ds = column_dataset({{"x1", {1, 1, -1, -1}}, {"x2", {1, -1, 1, -1}}});
    const auto rep = vif(ds, {"x1", "x2"});
    c.require(std::fabs(rep.entries[0].vif - 1.0) <= 1e-9 &&
                  std::fabs(rep.entries[1].vif - 1.0) <= 1e-9,
              "orthogonal VIF != 1");

    std::vector<double> line = {1, 2, 3, 4, 5, 6};
    const Dataset rank1 = column_dataset({{"x", line}, {"y", line}});
    const auto p = pca(rank1, {"x", "y"}, std::size_t{2});
    c.require(std::fabs(p.explained_share[0] - 1.0) <= 1e-8,
              "rank-1 PCA first share != 100%");
}

void criterion_render_fidelity(Check& c) {
    RenderSettings comma;
    comma.decimal_separator = ',';
    const std::string coef = format_coefficient(-3.069, comma);
    const std::string se = format_se_stars(0.597, star_level(0.001), comma);
    c.require(coef == "\xe2\x88\x92" "3,069", "coefficient cell is '" + coef + "'");
    c.require(se == "(0,597)***", "se cell is '" + se + "'");

    RegressionResult res;
    res.label = "t4";
    res.method = RegressionMethod::OLS;
    res.dependent = "PROD";
    res.terms = {{"GINI", -3.069, 0.597, 0.001, star_level(0.001)}};
    res.adj_r2 = 0.86;
    res.log_lik = 39.02;
    res.aic = -52.04;
    res.n = 38;
    const std::string table = render_regression_table(res, comma);
    const auto coef_pos = table.find("\xe2\x88\x92" "3,069");
    const auto se_pos = table.find("(0,597)***");
    c.require(coef_pos != std::string::npos && se_pos != std::string::npos &&
                  coef_pos < se_pos,
              "GINI row cells not rendered in order");
    if (coef_pos != std::string::npos) {
        const auto nl = table.find('\n', coef_pos);
        c.require(se_pos > nl && se_pos < table.find('\n', nl + 1),
                  "se cell is not on the line under the coefficient");
    }

    c.require(star_level(0.0099999) == 3, "p just under 0.01 must get ***");
    c.require(star_level(0.01) == 2, "p = 0.01 must get **");
    c.require(star_level(0.05) == 1, "p = 0.05 must get *");
    c.require(star_level(0.1) == 0, "p = 0.1 must get no star");
}

void criterion_aic_identity(Check& c) {
    const FitMetrics m = fit_metrics(13, 39.02);
    c.require(m.aic == 2.0 * 13 - 2.0 * 39.02, "aic identity violated");
    c.require(std::fabs(m.aic - (-52.05)) <= 0.01 + 1e-12,
              "aic does not reproduce the published Akaike value within 2-decimal rounding");

    // Identity holds exactly across fitted models.
    const InteriorSample s = interior_sample(17);
    const auto ols = fit_ols(s.ols, s.ds);
    c.require(ols.aic == 2.0 * ols.param_count - 2.0 * ols.log_lik, "OLS aic identity");
    auto tspec = s.ols;
    tspec.method = RegressionMethod::Tobit;
    tspec.lower_bound = 0.0;
    tspec.upper_bound = 1.0;
    const auto tob = fit_tobit(tspec, s.ds);
    c.require(tob.aic == 2.0 * tob.param_count - 2.0 * tob.log_lik, "Tobit aic identity");
}

void criterion_end_to_end_demo(Check& c) {
    const char* bin = std::getenv("FRONTIER_BENCH_BIN");
    if (!bin || !*bin) {
        c.require(false, "FRONTIER_BENCH_BIN not set; cannot spawn the CLI");
        return;
    }
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() /
                     ("frontier_acc12_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::string demo_cmd = std::string("\"") + bin + "\" demo --out \"" +
                                 dir.string() + "\" > /dev/null 2>&1";
    c.require(std::system(demo_cmd.c_str()) == 0, "demo subcommand failed");

    const std::string run_cmd = std::string("\"") + bin + "\" run --config \"" +
                                (dir / "config.json").string() + "\" > /dev/null 2>&1";
    const int status = std::system(run_cmd.c_str());
    c.require(status == 0, "run exited with status " + std::to_string(status));

    const fs::path report_path = dir / "out" / "report.json";
    c.require(fs::exists(report_path), "report.json missing");
    if (!fs::exists(report_path)) return;
    std::ifstream in(report_path);
    nlohmann::json report;
    in >> report;
    for (const char* section :
         {"meta", "descriptive_stats", "gini", "dea", "correlation", "regressions",
          "reduction_traces", "staged_runs", "comparisons", "sign_checks"}) {
        c.require(report.contains(section), std::string("missing report section: ") + section);
    }
    c.require(report["meta"]["n"].get<int>() == 38, "demo cross-section is not N = 38");

    std::ifstream tin(dir / "out" / "report.txt");
    std::stringstream text;
    text << tin.rdbuf();
    c.require(text.str().find("N         38") != std::string::npos ||
                  text.str().find("38") != std::string::npos,
              "rendered table does not show N = 38");
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Check&)> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Tobit = OLS absent censoring (50 seeds, 1e-4)", 10.0, criterion_tobit_equals_ols},
        {2, "truncated with infinite bounds = OLS (50 seeds, 1e-8)", 10.0,
         criterion_truncated_equals_ols},
        {3, "DEA matches vertex-enumeration oracle (200 seeds, 1e-6)", 30.0,
         criterion_dea_oracle},
        {4, "DEA invariants: range, frontier, units, VRS>=CRS (100 seeds)", 30.0,
         criterion_dea_invariants},
        {5, "analytic MLE gradients vs central differences (10x20, 1e-5)", 5.0,
         criterion_gradients},
        {6, "OLS matches cofactor normal-equation oracle (100 seeds, 1e-10)", 5.0,
         criterion_ols_oracle},
        {7, "backward elimination protocol at threshold 0.33", 20.0,
         criterion_backward_elimination},
        {8, "staged inclusion: 5 nested stages, VIF flag on collinear pair", 5.0,
         criterion_staged_inclusion},
        {9, "diagnostics closed forms (gini, VIF, PCA)", 1.0,
         criterion_diagnostics_closed_forms},
        {10, "table rendering byte fidelity and star thresholds", 1.0,
         criterion_render_fidelity},
        {11, "AIC identity and published Akaike value", 1.0, criterion_aic_identity},
        {12, "end-to-end demo run (38 DMUs, all sections)", 5.0, criterion_end_to_end_demo},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > criterion.budget_seconds)
            check.failures.push_back("runtime " + std::to_string(elapsed) +
                                     " s exceeds budget " +
                                     std::to_string(criterion.budget_seconds) + " s");
        if (check.failures.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.2f s)\n", criterion.id, criterion.name,
                        elapsed);
        } else {
            ++failed;
            std::printf("[FAIL] criterion %2d: %s (%.2f s)\n", criterion.id, criterion.name,
                        elapsed);
            std::size_t shown = 0;
            for (const auto& f : check.failures) {
                std::printf("        - %s\n", f.c_str());
                if (++shown >= 5) {
                    std::printf("        - (%zu more)\n", check.failures.size() - shown);
                    break;
                }
            }
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed;
}
