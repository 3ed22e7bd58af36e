#include "frontier/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

} // namespace

CorrelationMatrix correlation_matrix(const Dataset& ds, const std::vector<std::string>& vars) {
    if (vars.empty()) throw AnalysisError("correlation: empty variable list");
    if (ds.n_rows() < 2) throw AnalysisError("correlation: need at least 2 observations");
    for (const auto& name : vars) {
        const auto& col = ds.column(name);
        const double m = mean_of(col);
        double var = 0.0;
        for (double v : col) var += (v - m) * (v - m);
        if (var <= 0.0) throw AnalysisError("correlation: zero-variance column: " + name);
    }
    CorrelationMatrix cm;
    cm.variables = vars;
    cm.values = Matrix(vars.size(), vars.size(), 0.0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        cm.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            const double r = pearson(ds.column(vars[i]), ds.column(vars[j]));
            cm.values(i, j) = r;
            cm.values(j, i) = r;
        }
    }
    return cm;
}

std::vector<CorrelationPair> ranked_pairs(const CorrelationMatrix& cm) {
    std::vector<CorrelationPair> pairs;
    for (std::size_t i = 0; i < cm.variables.size(); ++i)
        for (std::size_t j = i + 1; j < cm.variables.size(); ++j)
            pairs.push_back({cm.variables[i], cm.variables[j], cm.values(i, j)});
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::fabs(a.r) > std::fabs(b.r);
    });
    return pairs;
}

VifReport vif(const Dataset& ds, const std::vector<std::string>& regressors, double threshold) {
    VifReport report;
    report.threshold = threshold;
    if (regressors.size() < 2) {
        report.note = "VIF requires at least 2 regressors";
        return report;
    }
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        RegressionSpec aux;
        aux.label = "vif:" + regressors[j];
        aux.dependent = regressors[j];
        for (std::size_t l = 0; l < regressors.size(); ++l)
            if (l != j) aux.regressors.push_back(regressors[l]);
        aux.intercept = true;
        aux.method = RegressionMethod::OLS;

        VifEntry entry;
        entry.regressor = regressors[j];
        try {
            const RegressionResult r = fit_ols(aux, ds);
            // Recover R^2 from the reported adjusted value.
            const double n = static_cast<double>(r.n);
            const double k = static_cast<double>(aux.regressors.size()) + 1.0;
            const double r2 = 1.0 - (1.0 - *r.adj_r2) * (n - k) / (n - 1.0);
            if (r2 >= 1.0 - 1e-12) {
                entry.vif = std::numeric_limits<double>::infinity();
            } else {
                entry.vif = 1.0 / (1.0 - r2);
            }
        } catch (const AnalysisError&) {
            // Exact collinearity makes the auxiliary regression rank deficient.
            entry.vif = std::numeric_limits<double>::infinity();
        }
        entry.flagged = entry.vif >= threshold;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace {

// Cyclic Jacobi on a symmetric matrix; returns eigenvalues, fills
// eigenvectors (columns of v). Converges when the off-diagonal Frobenius
// norm drops below 1e-12, capped at 100 sweeps.
std::vector<double> jacobi_eigen(Matrix a, Matrix& v) {
    const std::size_t p = a.rows();
    v = Matrix(p, p, 0.0);
    for (std::size_t i = 0; i < p; ++i) v(i, i) = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) off += 2.0 * a(i, j) * a(i, j);
        if (std::sqrt(off) < 1e-12) break;
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = i + 1; j < p; ++j) {
                if (a(i, j) == 0.0) continue;
                const double theta = (a(j, j) - a(i, i)) / (2.0 * a(i, j));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t l = 0; l < p; ++l) {
                    const double ail = a(i, l);
                    const double ajl = a(j, l);
                    a(i, l) = c * ail - s * ajl;
                    a(j, l) = s * ail + c * ajl;
                }
                for (std::size_t l = 0; l < p; ++l) {
                    const double ali = a(l, i);
                    const double alj = a(l, j);
                    a(l, i) = c * ali - s * alj;
                    a(l, j) = s * ali + c * alj;
                }
                for (std::size_t l = 0; l < p; ++l) {
                    const double vli = v(l, i);
                    const double vlj = v(l, j);
                    v(l, i) = c * vli - s * vlj;
                    v(l, j) = s * vli + c * vlj;
                }
            }
        }
    }
    std::vector<double> eig(p);
    for (std::size_t i = 0; i < p; ++i) eig[i] = a(i, i);
    return eig;
}

} // namespace

PcaResult pca(const Dataset& ds, const std::vector<std::string>& vars, PcaRetain retain) {
    if (vars.empty()) throw AnalysisError("pca: empty variable list");
    const std::size_t n = ds.n_rows();
    if (n < 2) throw AnalysisError("pca: need at least 2 observations");
    const std::size_t p = vars.size();

    // Standardize, then build the correlation matrix.
    Matrix z(n, p);
    for (std::size_t j = 0; j < p; ++j) {
        const auto& col = ds.column(vars[j]);
        const double m = mean_of(col);
        double var = 0.0;
        for (double v : col) var += (v - m) * (v - m);
        var /= static_cast<double>(n - 1);
        if (var <= 0.0) throw AnalysisError("pca: zero-variance column: " + vars[j]);
        const double sd = std::sqrt(var);
        for (std::size_t i = 0; i < n; ++i) z(i, j) = (col[i] - m) / sd;
    }
    Matrix corr(p, p, 0.0);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += z(i, a) * z(i, b);
            s /= static_cast<double>(n - 1);
            corr(a, b) = s;
            corr(b, a) = s;
        }

    Matrix vecs;
    std::vector<double> eig = jacobi_eigen(corr, vecs);

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eig[a] > eig[b]; });

    PcaResult res;
    res.variables = vars;
    res.loadings = Matrix(p, p, 0.0);
    res.explained_share.resize(p);
    double total = 0.0;
    for (double e : eig) total += std::max(e, 0.0);
    for (std::size_t c = 0; c < p; ++c) {
        const std::size_t src = order[c];
        res.explained_share[c] = std::max(eig[src], 0.0) / total;
        // Sign convention: the largest-magnitude loading of each component
        // is positive.
        std::size_t arg = 0;
        for (std::size_t r = 1; r < p; ++r)
            if (std::fabs(vecs(r, src)) > std::fabs(vecs(arg, src))) arg = r;
        const double flip = vecs(arg, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < p; ++r) res.loadings(r, c) = flip * vecs(r, src);
    }

    if (std::holds_alternative<std::size_t>(retain)) {
        res.retained = std::min(std::get<std::size_t>(retain), p);
    } else {
        const double target = std::get<double>(retain);
        double cum = 0.0;
        res.retained = p;
        for (std::size_t c = 0; c < p; ++c) {
            cum += res.explained_share[c];
            if (cum >= target) {
                res.retained = c + 1;
                break;
            }
        }
    }
    return res;
}

double gini(const std::vector<double>& series) {
    if (series.empty()) throw AnalysisError("gini: empty series");
    for (double v : series)
        if (v < 0.0) throw AnalysisError("gini: negative value");
    std::vector<double> sorted = series;
    std::sort(sorted.begin(), sorted.end());
    // Accumulate in sorted order so the result is exactly permutation
    // invariant.
    double sum = 0.0;
    for (double v : sorted) sum += v;
    if (sum <= 0.0) throw AnalysisError("gini: all-zero series");
    const double n = static_cast<double>(sorted.size());
    // For sorted v, sum_ij |v_i - v_j| = 2 * sum_i (2i - n - 1) v_(i).
    double weighted = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * sorted[i];
    return weighted / (n * sum);
}

SignCheck sign_check(const RegressionResult& result, const VariableCatalog& catalog) {
    SignCheck check;
    check.label = result.label;
    for (const auto& term : result.terms) {
        if (term.name == "INT") continue;
        const VariableSpec* spec = catalog.find(term.name);
        if (!spec) throw AnalysisError("sign check: unknown term: " + term.name);
        SignCheckEntry e;
        e.term = term.name;
        e.expected = spec->expected_sign;
        e.coefficient = term.coefficient;
        if (spec->expected_sign == ExpectedSign::Ambiguous) {
            e.match = SignMatch::AmbiguousExpected;
        } else {
            const bool wrong =
                (spec->expected_sign == ExpectedSign::Positive && term.coefficient < 0.0) ||
                (spec->expected_sign == ExpectedSign::Negative && term.coefficient > 0.0);
            e.match = wrong ? SignMatch::Mismatch : SignMatch::Match;
        }
        check.entries.push_back(std::move(e));
    }
    return check;
}

std::vector<double> productivity(const std::vector<double>& composite_flight_hours,
                                 const std::vector<double>& atco_hours) {
    if (composite_flight_hours.size() != atco_hours.size())
        throw AnalysisError("productivity: input vectors have different lengths");
    std::vector<double> out;
    out.reserve(atco_hours.size());
    for (std::size_t i = 0; i < atco_hours.size(); ++i) {
        if (atco_hours[i] <= 0.0)
            throw AnalysisError("productivity: non-positive ATCO hours at index " +
                                std::to_string(i));
        out.push_back(composite_flight_hours[i] / atco_hours[i]);
    }
    return out;
}

} // namespace frontier
