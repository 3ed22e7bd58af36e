#include "frontier/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "frontier/errors.hpp"
#include "frontier/stats.hpp"

namespace frontier {

namespace {
constexpr double kGradTol = 1e-8;
constexpr int kMaxNewtonIter = 500;
constexpr double kSigmaFloor = 1e-10;
constexpr double kLog2Pi = 1.8378770664093454836;
} // namespace

const char* to_string(RegressionMethod m) {
    switch (m) {
        case RegressionMethod::OLS: return "OLS";
        case RegressionMethod::Tobit: return "Tobit";
        case RegressionMethod::Truncated: return "Truncated";
    }
    return "OLS";
}

RegressionMethod method_from_string(const std::string& s) {
    if (s == "OLS" || s == "ols") return RegressionMethod::OLS;
    if (s == "Tobit" || s == "tobit") return RegressionMethod::Tobit;
    if (s == "Truncated" || s == "truncated") return RegressionMethod::Truncated;
    throw ConfigError("unknown regression method: " + s);
}

int star_level(double p) {
    if (p < 0.01) return 3;
    if (p < 0.05) return 2;
    if (p < 0.1) return 1;
    return 0;
}

const char* star_string(int level) {
    switch (level) {
        case 3: return "***";
        case 2: return "**";
        case 1: return "*";
        default: return "";
    }
}

FitMetrics fit_metrics(int param_count, double log_lik, std::optional<double> adj_r2) {
    FitMetrics m;
    m.adj_r2 = adj_r2;
    m.log_lik = log_lik;
    m.aic = 2.0 * param_count - 2.0 * log_lik;
    return m;
}

namespace {

void validate_spec(const RegressionSpec& spec) {
    if (spec.regressors.empty() && !spec.intercept)
        throw AnalysisError("regression " + spec.label + ": no regressors and no intercept");
    std::set<std::string> seen;
    for (const auto& r : spec.regressors) {
        if (!seen.insert(r).second)
            throw AnalysisError("regression " + spec.label + ": duplicate regressor " + r);
        if (r == spec.dependent)
            throw AnalysisError("regression " + spec.label + ": dependent variable " + r +
                                " appears among the regressors");
    }
    // Tobit without a bound has nothing to censor at; truncated with both
    // bounds infinite is legal and reduces to plain normal regression.
    if (spec.method == RegressionMethod::Tobit && !spec.lower_bound && !spec.upper_bound)
        throw AnalysisError("regression " + spec.label +
                            ": Tobit requires at least one finite bound");
    if (spec.method != RegressionMethod::OLS && spec.lower_bound && spec.upper_bound &&
        !(*spec.lower_bound < *spec.upper_bound))
        throw AnalysisError("regression " + spec.label +
                            ": lower bound must be below upper bound");
}

std::vector<std::string> term_names(const RegressionSpec& spec) {
    std::vector<std::string> names;
    if (spec.intercept) names.push_back("INT");
    names.insert(names.end(), spec.regressors.begin(), spec.regressors.end());
    return names;
}

} // namespace

Matrix build_design(const RegressionSpec& spec, const Dataset& ds) {
    const std::size_t n = ds.n_rows();
    const std::size_t k = spec.regressors.size() + (spec.intercept ? 1 : 0);
    Matrix x(n, k);
    std::size_t col = 0;
    if (spec.intercept) {
        for (std::size_t i = 0; i < n; ++i) x(i, col) = 1.0;
        ++col;
    }
    for (const auto& name : spec.regressors) {
        const auto& values = ds.column(name);
        for (std::size_t i = 0; i < n; ++i) x(i, col) = values[i];
        ++col;
    }
    return x;
}

RegressionResult fit_ols(const RegressionSpec& spec, const Dataset& ds) {
    validate_spec(spec);
    const Matrix x = build_design(spec, ds);
    const std::vector<double>& y = ds.column(spec.dependent);
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    const auto names = term_names(spec);
    if (n <= k)
        throw AnalysisError("regression " + spec.label + ": n = " + std::to_string(n) +
                            " observations, " + std::to_string(k) + " parameters");

    const LeastSquaresResult ls = least_squares(x, y);
    if (!ls.rank_ok) {
        std::ostringstream msg;
        msg << "regression " << spec.label << ": design matrix rank deficient; collinear columns:";
        for (std::size_t c : ls.deficient_cols) msg << ' ' << names[c];
        throw AnalysisError(msg.str());
    }

    const double df = static_cast<double>(n - k);
    const double sigma2 = ls.rss / df;

    RegressionResult res;
    res.method = RegressionMethod::OLS;
    res.label = spec.label;
    res.dependent = spec.dependent;
    res.n = n;
    res.sigma = std::sqrt(sigma2);
    res.lower_bound = spec.lower_bound;
    res.upper_bound = spec.upper_bound;
    for (std::size_t j = 0; j < k; ++j) {
        RegressionTerm t;
        t.name = names[j];
        t.coefficient = ls.beta[j];
        t.std_error = std::sqrt(std::max(0.0, sigma2 * ls.xtx_inv(j, j)));
        double tstat;
        if (t.std_error > 0.0) {
            tstat = t.coefficient / t.std_error;
        } else {
            tstat = (t.coefficient == 0.0) ? 0.0
                                           : std::numeric_limits<double>::infinity();
        }
        t.p_value = student_t_two_sided_p(tstat, df);
        t.stars = star_level(t.p_value);
        res.terms.push_back(std::move(t));
    }

    double tss = 0.0;
    if (spec.intercept) {
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(n);
        for (double v : y) tss += (v - mean) * (v - mean);
    } else {
        for (double v : y) tss += v * v;
    }
    const double r2 = (tss > 0.0) ? 1.0 - ls.rss / tss : 1.0;
    const double adj = 1.0 - (1.0 - r2) * (static_cast<double>(n) - 1.0) / df;

    // Gaussian likelihood at the fitted parameters (MLE scale RSS/n), clamped
    // away from the degenerate perfect-fit case.
    const double mle_var = std::max(ls.rss / static_cast<double>(n), 1e-300);
    const double log_lik = -0.5 * static_cast<double>(n) * (kLog2Pi + std::log(mle_var) + 1.0);

    res.param_count = static_cast<int>(k);
    const FitMetrics fm = fit_metrics(res.param_count, log_lik, adj);
    res.adj_r2 = fm.adj_r2;
    res.log_lik = fm.log_lik;
    res.aic = fm.aic;
    return res;
}

// --- censored (Tobit) likelihood -------------------------------------------

namespace {

enum class ObsKind { Interior, AtLower, AtUpper };

std::vector<ObsKind> classify_censored(const std::vector<double>& y,
                                       std::optional<double> lower,
                                       std::optional<double> upper) {
    std::vector<ObsKind> kind(y.size(), ObsKind::Interior);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (lower && y[i] <= *lower) kind[i] = ObsKind::AtLower;
        else if (upper && y[i] >= *upper) kind[i] = ObsKind::AtUpper;
    }
    return kind;
}

double xdot(const Matrix& x, std::size_t i, const std::vector<double>& beta) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) s += x(i, j) * beta[j];
    return s;
}

} // namespace

double censored_loglik(const Matrix& x, const std::vector<double>& y,
                       std::optional<double> lower, std::optional<double> upper,
                       const std::vector<double>& beta, double sigma) {
    const auto kind = classify_censored(y, lower, upper);
    double ll = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double mu = xdot(x, i, beta);
        switch (kind[i]) {
            case ObsKind::Interior: {
                const double z = (y[i] - mu) / sigma;
                ll += -0.5 * z * z - 0.5 * kLog2Pi - std::log(sigma);
                break;
            }
            case ObsKind::AtLower:
                ll += norm_log_cdf((*lower - mu) / sigma);
                break;
            case ObsKind::AtUpper:
                ll += norm_log_cdf((mu - *upper) / sigma);
                break;
        }
    }
    return ll;
}

std::vector<double> censored_loglik_gradient(const Matrix& x, const std::vector<double>& y,
                                             std::optional<double> lower,
                                             std::optional<double> upper,
                                             const std::vector<double>& beta, double sigma) {
    const auto kind = classify_censored(y, lower, upper);
    const std::size_t k = x.cols();
    std::vector<double> g(k + 1, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double mu = xdot(x, i, beta);
        double gb = 0.0; // common factor on x_ij for d/d beta_j
        double gs = 0.0; // d/d sigma contribution
        switch (kind[i]) {
            case ObsKind::Interior: {
                const double z = (y[i] - mu) / sigma;
                gb = z / sigma;
                gs = (z * z - 1.0) / sigma;
                break;
            }
            case ObsKind::AtLower: {
                const double z = (*lower - mu) / sigma;
                const double m = mills_ratio(z);
                gb = -m / sigma;
                gs = -m * z / sigma;
                break;
            }
            case ObsKind::AtUpper: {
                const double z = (mu - *upper) / sigma;
                const double m = mills_ratio(z);
                gb = m / sigma;
                gs = -m * z / sigma;
                break;
            }
        }
        for (std::size_t j = 0; j < k; ++j) g[j] += gb * x(i, j);
        g[k] += gs;
    }
    return g;
}

namespace {

// Observed information (negative Hessian) of the censored likelihood in
// (beta, sigma), assembled analytically.
Matrix censored_neg_hessian(const Matrix& x, const std::vector<double>& y,
                            std::optional<double> lower, std::optional<double> upper,
                            const std::vector<double>& beta, double sigma) {
    const auto kind = classify_censored(y, lower, upper);
    const std::size_t k = x.cols();
    Matrix h(k + 1, k + 1, 0.0);
    const double s2 = sigma * sigma;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double mu = xdot(x, i, beta);
        double hbb = 0.0; // coefficient on x_ij x_il
        double hbs = 0.0; // coefficient on x_ij for the sigma cross terms
        double hss = 0.0;
        switch (kind[i]) {
            case ObsKind::Interior: {
                const double z = (y[i] - mu) / sigma;
                hbb = -1.0 / s2;
                hbs = -2.0 * z / s2;
                hss = (1.0 - 3.0 * z * z) / s2;
                break;
            }
            case ObsKind::AtLower: {
                const double z = (*lower - mu) / sigma;
                const double m = mills_ratio(z);
                const double md = mills_ratio_deriv(z);
                hbb = md / s2;
                hbs = (md * z + m) / s2;
                hss = (md * z * z + 2.0 * m * z) / s2;
                break;
            }
            case ObsKind::AtUpper: {
                const double z = (mu - *upper) / sigma;
                const double m = mills_ratio(z);
                const double md = mills_ratio_deriv(z);
                hbb = md / s2;
                hbs = -(md * z + m) / s2;
                hss = (md * z * z + 2.0 * m * z) / s2;
                break;
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t l = 0; l <= j; ++l) {
                const double v = hbb * x(i, j) * x(i, l);
                h(j, l) -= v;
                if (l != j) h(l, j) -= v;
            }
            h(j, k) -= hbs * x(i, j);
            h(k, j) -= hbs * x(i, j);
        }
        h(k, k) -= hss;
    }
    return h;
}

// Olsen's reparameterization delta = beta/sigma, gamma = 1/sigma renders the
// censored-normal log-likelihood globally concave, so plain Newton with step
// halving converges without multi-start.
struct OlsenEval {
    double ll;
    std::vector<double> grad;
    Matrix neg_hess;
};

OlsenEval olsen_eval(const Matrix& x, const std::vector<double>& y,
                     std::optional<double> lower, std::optional<double> upper,
                     const std::vector<ObsKind>& kind, const std::vector<double>& w) {
    const std::size_t k = x.cols();
    const double gamma = w[k];
    OlsenEval ev;
    ev.ll = 0.0;
    ev.grad.assign(k + 1, 0.0);
    ev.neg_hess = Matrix(k + 1, k + 1, 0.0);

    for (std::size_t i = 0; i < y.size(); ++i) {
        double xd = 0.0;
        for (std::size_t j = 0; j < k; ++j) xd += x(i, j) * w[j];
        double gb = 0.0, gg = 0.0, hbb = 0.0, hbg = 0.0, hgg = 0.0;
        switch (kind[i]) {
            case ObsKind::Interior: {
                const double u = gamma * y[i] - xd;
                ev.ll += -0.5 * u * u - 0.5 * kLog2Pi + std::log(gamma);
                gb = u;
                gg = -u * y[i] + 1.0 / gamma;
                hbb = -1.0;
                hbg = y[i];
                hgg = -y[i] * y[i] - 1.0 / (gamma * gamma);
                break;
            }
            case ObsKind::AtLower: {
                const double v = gamma * (*lower) - xd;
                const double m = mills_ratio(v);
                const double md = mills_ratio_deriv(v);
                ev.ll += norm_log_cdf(v);
                gb = -m;
                gg = m * (*lower);
                hbb = md;
                hbg = -md * (*lower);
                hgg = md * (*lower) * (*lower);
                break;
            }
            case ObsKind::AtUpper: {
                const double v = xd - gamma * (*upper);
                const double m = mills_ratio(v);
                const double md = mills_ratio_deriv(v);
                ev.ll += norm_log_cdf(v);
                gb = m;
                gg = -m * (*upper);
                hbb = md;
                hbg = -md * (*upper);
                hgg = md * (*upper) * (*upper);
                break;
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            ev.grad[j] += gb * x(i, j);
            for (std::size_t l = 0; l <= j; ++l) {
                const double v = hbb * x(i, j) * x(i, l);
                ev.neg_hess(j, l) -= v;
                if (l != j) ev.neg_hess(l, j) -= v;
            }
            ev.neg_hess(j, k) -= hbg * x(i, j);
            ev.neg_hess(k, j) -= hbg * x(i, j);
        }
        ev.grad[k] += gg;
        ev.neg_hess(k, k) -= hgg;
    }
    return ev;
}

double olsen_ll_only(const Matrix& x, const std::vector<double>& y,
                     std::optional<double> lower, std::optional<double> upper,
                     const std::vector<ObsKind>& kind, const std::vector<double>& w) {
    const std::size_t k = x.cols();
    const double gamma = w[k];
    double ll = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double xd = 0.0;
        for (std::size_t j = 0; j < k; ++j) xd += x(i, j) * w[j];
        switch (kind[i]) {
            case ObsKind::Interior: {
                const double u = gamma * y[i] - xd;
                ll += -0.5 * u * u - 0.5 * kLog2Pi + std::log(gamma);
                break;
            }
            case ObsKind::AtLower:
                ll += norm_log_cdf(gamma * (*lower) - xd);
                break;
            case ObsKind::AtUpper:
                ll += norm_log_cdf(xd - gamma * (*upper));
                break;
        }
    }
    return ll;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace

RegressionResult fit_tobit(const RegressionSpec& spec, const Dataset& ds) {
    validate_spec(spec);
    const Matrix x = build_design(spec, ds);
    const std::vector<double>& y = ds.column(spec.dependent);
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    const auto names = term_names(spec);
    if (n <= k)
        throw AnalysisError("regression " + spec.label + ": n = " + std::to_string(n) +
                            " observations, " + std::to_string(k) + " parameters");

    const auto kind = classify_censored(y, spec.lower_bound, spec.upper_bound);
    const std::size_t interior =
        static_cast<std::size_t>(std::count(kind.begin(), kind.end(), ObsKind::Interior));
    if (interior == 0)
        throw AnalysisError("regression " + spec.label + ": all observations censored");

    // OLS starting point.
    const LeastSquaresResult ls = least_squares(x, y);
    if (!ls.rank_ok)
        throw AnalysisError("regression " + spec.label + ": design matrix rank deficient");
    const double s0 = std::max(std::sqrt(ls.rss / static_cast<double>(n)), 1e-6);

    std::vector<double> w(k + 1);
    for (std::size_t j = 0; j < k; ++j) w[j] = ls.beta[j] / s0;
    w[k] = 1.0 / s0;

    int iter = 0;
    bool converged = false;
    double grad_norm = 0.0;
    for (; iter < kMaxNewtonIter; ++iter) {
        OlsenEval ev = olsen_eval(x, y, spec.lower_bound, spec.upper_bound, kind, w);
        grad_norm = inf_norm(ev.grad);
        if (grad_norm <= kGradTol) {
            converged = true;
            break;
        }
        std::vector<double> dir;
        double ridge = 0.0;
        while (true) {
            Matrix h = ev.neg_hess;
            if (ridge > 0.0)
                for (std::size_t j = 0; j < k + 1; ++j) h(j, j) += ridge;
            if (cholesky_solve(h, ev.grad, dir)) break;
            ridge = (ridge == 0.0) ? 1e-8 : ridge * 100.0;
            if (ridge > 1e12)
                throw AnalysisError("regression " + spec.label +
                                    ": Newton step failed (singular Hessian)");
        }
        double alpha = 1.0;
        bool improved = false;
        for (int h = 0; h < 60; ++h) {
            std::vector<double> trial = w;
            for (std::size_t j = 0; j < k + 1; ++j) trial[j] += alpha * dir[j];
            if (trial[k] > 1e-12) {
                const double ll =
                    olsen_ll_only(x, y, spec.lower_bound, spec.upper_bound, kind, trial);
                if (std::isfinite(ll) && ll > ev.ll) {
                    w = std::move(trial);
                    improved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!improved) break; // stalled; convergence decided by gradient norm
        if (1.0 / w[k] < kSigmaFloor)
            throw AnalysisError("regression " + spec.label + ": sigma collapsed below 1e-10");
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "regression " << spec.label << ": Tobit did not converge after " << iter
            << " iterations (gradient norm " << grad_norm << ")";
        throw AnalysisError(msg.str());
    }

    const double sigma = 1.0 / w[k];
    if (sigma < kSigmaFloor)
        throw AnalysisError("regression " + spec.label + ": sigma collapsed below 1e-10");
    std::vector<double> beta(k);
    for (std::size_t j = 0; j < k; ++j) beta[j] = w[j] * sigma;

    // Standard errors from the inverse observed information in (beta, sigma).
    const Matrix info =
        censored_neg_hessian(x, y, spec.lower_bound, spec.upper_bound, beta, sigma);
    Matrix cov;
    if (!spd_inverse(info, cov))
        throw AnalysisError("regression " + spec.label +
                            ": observed information is not positive definite");

    RegressionResult res;
    res.method = RegressionMethod::Tobit;
    res.label = spec.label;
    res.dependent = spec.dependent;
    res.n = n;
    res.sigma = sigma;
    res.converged = true;
    res.iterations = iter;
    res.lower_bound = spec.lower_bound;
    res.upper_bound = spec.upper_bound;
    for (std::size_t j = 0; j < k; ++j) {
        RegressionTerm t;
        t.name = names[j];
        t.coefficient = beta[j];
        t.std_error = std::sqrt(std::max(0.0, cov(j, j)));
        const double z = (t.std_error > 0.0)
                             ? t.coefficient / t.std_error
                             : (t.coefficient == 0.0 ? 0.0
                                                     : std::numeric_limits<double>::infinity());
        t.p_value = normal_two_sided_p(z);
        t.stars = star_level(t.p_value);
        res.terms.push_back(std::move(t));
    }
    res.param_count = static_cast<int>(k) + 1; // sigma counts for MLE methods
    const double ll = censored_loglik(x, y, spec.lower_bound, spec.upper_bound, beta, sigma);
    const FitMetrics fm = fit_metrics(res.param_count, ll);
    res.log_lik = fm.log_lik;
    res.aic = fm.aic;
    return res;
}

// --- truncated likelihood ---------------------------------------------------

namespace {

// log of the in-bounds probability mass plus the phi(z_u), phi(z_l) ratios
// against it, all computed in log space.
struct TruncMass {
    double log_mass;
    double ratio_upper; // phi(zu) / mass,   0 when the bound is infinite
    double ratio_lower; // phi(zl) / mass
    double zu;
    double zl;
};

TruncMass trunc_mass(double mu, double sigma, std::optional<double> lower,
                     std::optional<double> upper) {
    TruncMass t{0.0, 0.0, 0.0, 0.0, 0.0};
    const bool has_l = lower.has_value();
    const bool has_u = upper.has_value();
    t.zl = has_l ? (*lower - mu) / sigma : 0.0;
    t.zu = has_u ? (*upper - mu) / sigma : 0.0;
    if (has_l && has_u) t.log_mass = norm_log_cdf_diff(t.zl, t.zu);
    else if (has_u) t.log_mass = norm_log_cdf(t.zu);
    else if (has_l) t.log_mass = norm_log_cdf(-t.zl);
    else t.log_mass = 0.0;
    if (has_u)
        t.ratio_upper = std::exp(-0.5 * t.zu * t.zu - 0.5 * kLog2Pi - t.log_mass);
    if (has_l)
        t.ratio_lower = std::exp(-0.5 * t.zl * t.zl - 0.5 * kLog2Pi - t.log_mass);
    return t;
}

} // namespace

double truncated_loglik(const Matrix& x, const std::vector<double>& y,
                        std::optional<double> lower, std::optional<double> upper,
                        const std::vector<double>& beta, double sigma) {
    double ll = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double mu = xdot(x, i, beta);
        const double z = (y[i] - mu) / sigma;
        const TruncMass t = trunc_mass(mu, sigma, lower, upper);
        ll += -0.5 * z * z - 0.5 * kLog2Pi - std::log(sigma) - t.log_mass;
    }
    return ll;
}

std::vector<double> truncated_loglik_gradient(const Matrix& x, const std::vector<double>& y,
                                              std::optional<double> lower,
                                              std::optional<double> upper,
                                              const std::vector<double>& beta, double sigma) {
    const std::size_t k = x.cols();
    std::vector<double> g(k + 1, 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double mu = xdot(x, i, beta);
        const double z = (y[i] - mu) / sigma;
        const TruncMass t = trunc_mass(mu, sigma, lower, upper);
        const double gb = (z + t.ratio_upper - t.ratio_lower) / sigma;
        const double gs = (z * z - 1.0) / sigma +
                          (t.zu * t.ratio_upper - t.zl * t.ratio_lower) / sigma;
        for (std::size_t j = 0; j < k; ++j) g[j] += gb * x(i, j);
        g[k] += gs;
    }
    return g;
}

namespace {

// Working coordinates for the truncated optimizer: (beta, log sigma). The
// likelihood is not globally concave, hence multi-start plus ridge damping.
struct TruncProblem {
    const Matrix& x;
    const std::vector<double>& y;
    std::optional<double> lower;
    std::optional<double> upper;

    double ll(const std::vector<double>& v) const {
        std::vector<double> beta(v.begin(), v.end() - 1);
        return truncated_loglik(x, y, lower, upper, beta, std::exp(v.back()));
    }

    std::vector<double> grad(const std::vector<double>& v) const {
        std::vector<double> beta(v.begin(), v.end() - 1);
        const double sigma = std::exp(v.back());
        std::vector<double> g = truncated_loglik_gradient(x, y, lower, upper, beta, sigma);
        g.back() *= sigma; // chain rule to log sigma
        return g;
    }

    Matrix neg_hess_fd(const std::vector<double>& v) const {
        const std::size_t p = v.size();
        Matrix h(p, p, 0.0);
        for (std::size_t j = 0; j < p; ++j) {
            const double step = 1e-5 * (1.0 + std::fabs(v[j]));
            std::vector<double> vp = v, vm = v;
            vp[j] += step;
            vm[j] -= step;
            const auto gp = grad(vp);
            const auto gm = grad(vm);
            for (std::size_t i = 0; i < p; ++i) h(i, j) = (gp[i] - gm[i]) / (2.0 * step);
        }
        // Symmetrize and negate.
        Matrix nh(p, p, 0.0);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) nh(i, j) = -0.5 * (h(i, j) + h(j, i));
        return nh;
    }
};

struct TruncStart {
    std::vector<double> v;
    double ll = -std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
};

TruncStart run_truncated_newton(const TruncProblem& prob, std::vector<double> v) {
    TruncStart out;
    const std::size_t p = v.size();
    int iter = 0;
    bool converged = false;
    for (; iter < kMaxNewtonIter; ++iter) {
        const auto g = prob.grad(v);
        if (inf_norm(g) <= kGradTol) {
            converged = true;
            break;
        }
        const Matrix nh = prob.neg_hess_fd(v);
        std::vector<double> dir;
        double ridge = 0.0;
        bool have_dir = false;
        for (int tries = 0; tries < 20; ++tries) {
            Matrix h = nh;
            if (ridge > 0.0)
                for (std::size_t j = 0; j < p; ++j) h(j, j) += ridge;
            if (cholesky_solve(h, g, dir)) {
                double ascent = 0.0;
                for (std::size_t j = 0; j < p; ++j) ascent += dir[j] * g[j];
                if (ascent > 0.0) {
                    have_dir = true;
                    break;
                }
            }
            ridge = (ridge == 0.0) ? 1e-6 : ridge * 10.0;
        }
        if (!have_dir) break;
        const double base = prob.ll(v);
        double alpha = 1.0;
        bool improved = false;
        for (int h = 0; h < 60; ++h) {
            std::vector<double> trial = v;
            for (std::size_t j = 0; j < p; ++j) trial[j] += alpha * dir[j];
            const double ll = prob.ll(trial);
            if (std::isfinite(ll) && ll > base) {
                v = std::move(trial);
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) break;
    }
    out.v = std::move(v);
    out.ll = prob.ll(out.v);
    out.converged = converged;
    out.iterations = iter;
    return out;
}

} // namespace

RegressionResult fit_truncated(const RegressionSpec& spec, const Dataset& ds,
                               std::uint64_t seed) {
    validate_spec(spec);
    const Matrix x = build_design(spec, ds);
    const std::vector<double>& y = ds.column(spec.dependent);
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    const auto names = term_names(spec);
    if (n <= k)
        throw AnalysisError("regression " + spec.label + ": n = " + std::to_string(n) +
                            " observations, " + std::to_string(k) + " parameters");
    for (std::size_t i = 0; i < n; ++i) {
        if ((spec.lower_bound && y[i] <= *spec.lower_bound) ||
            (spec.upper_bound && y[i] >= *spec.upper_bound))
            throw AnalysisError("regression " + spec.label + ": observation " +
                                ds.dmu_ids()[i] + " lies on or outside a truncation bound");
    }

    const LeastSquaresResult ls = least_squares(x, y);
    if (!ls.rank_ok)
        throw AnalysisError("regression " + spec.label + ": design matrix rank deficient");
    const double s0 = std::max(std::sqrt(ls.rss / static_cast<double>(n)), 1e-6);

    TruncProblem prob{x, y, spec.lower_bound, spec.upper_bound};

    std::vector<double> v0(k + 1);
    for (std::size_t j = 0; j < k; ++j) v0[j] = ls.beta[j];
    v0[k] = std::log(s0);

    // Five deterministic starts: the OLS estimate plus four perturbations.
    std::vector<TruncStart> starts;
    starts.push_back(run_truncated_newton(prob, v0));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int s = 1; s < 5; ++s) {
        std::vector<double> v = v0;
        for (std::size_t j = 0; j < k; ++j) v[j] += 0.25 * unif(rng) * (1.0 + std::fabs(v0[j]));
        v[k] += 0.5 * unif(rng);
        starts.push_back(run_truncated_newton(prob, v));
    }

    int best = -1;
    for (int s = 0; s < 5; ++s) {
        if (!starts[s].converged) continue;
        if (best < 0 || starts[s].ll > starts[best].ll + 1e-10 * (1.0 + std::fabs(starts[best].ll)))
            best = s;
    }
    if (best < 0) {
        const double gnorm = inf_norm(prob.grad(starts[0].v));
        std::ostringstream msg;
        msg << "regression " << spec.label
            << ": truncated fit did not converge from any start (gradient norm " << gnorm << ")";
        throw AnalysisError(msg.str());
    }

    // Converged starts that tie on the objective but land on different
    // coefficients signal a flat or multi-modal likelihood.
    bool disagreement = false;
    for (int s = 0; s < 5; ++s) {
        if (s == best || !starts[s].converged) continue;
        if (std::fabs(starts[s].ll - starts[best].ll) >
            1e-4 * (1.0 + std::fabs(starts[best].ll)))
            continue;
        for (std::size_t j = 0; j < k; ++j) {
            const double diff = std::fabs(starts[s].v[j] - starts[best].v[j]) /
                                (1.0 + std::fabs(starts[best].v[j]));
            if (diff > 1e-4) disagreement = true;
        }
    }

    std::vector<double> beta(starts[best].v.begin(), starts[best].v.end() - 1);
    const double sigma = std::exp(starts[best].v.back());
    if (sigma < kSigmaFloor)
        throw AnalysisError("regression " + spec.label + ": sigma collapsed below 1e-10");

    // Observed information in (beta, sigma) via differenced analytic gradient.
    const std::size_t p = k + 1;
    Matrix info(p, p, 0.0);
    {
        std::vector<double> theta(p);
        for (std::size_t j = 0; j < k; ++j) theta[j] = beta[j];
        theta[k] = sigma;
        auto grad_at = [&](const std::vector<double>& th) {
            std::vector<double> bb(th.begin(), th.end() - 1);
            return truncated_loglik_gradient(x, y, spec.lower_bound, spec.upper_bound, bb,
                                             th.back());
        };
        Matrix h(p, p, 0.0);
        for (std::size_t j = 0; j < p; ++j) {
            const double step = 1e-5 * (1.0 + std::fabs(theta[j]));
            std::vector<double> tp = theta, tm = theta;
            tp[j] += step;
            tm[j] -= step;
            const auto gp = grad_at(tp);
            const auto gm = grad_at(tm);
            for (std::size_t i = 0; i < p; ++i) h(i, j) = (gp[i] - gm[i]) / (2.0 * step);
        }
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) info(i, j) = -0.5 * (h(i, j) + h(j, i));
    }
    Matrix cov;
    if (!spd_inverse(info, cov))
        throw AnalysisError("regression " + spec.label +
                            ": observed information is not positive definite");

    RegressionResult res;
    res.method = RegressionMethod::Truncated;
    res.label = spec.label;
    res.dependent = spec.dependent;
    res.n = n;
    res.sigma = sigma;
    res.converged = true;
    res.iterations = starts[best].iterations;
    res.multistart_disagreement = disagreement;
    res.lower_bound = spec.lower_bound;
    res.upper_bound = spec.upper_bound;
    for (std::size_t j = 0; j < k; ++j) {
        RegressionTerm t;
        t.name = names[j];
        t.coefficient = beta[j];
        t.std_error = std::sqrt(std::max(0.0, cov(j, j)));
        const double z = (t.std_error > 0.0)
                             ? t.coefficient / t.std_error
                             : (t.coefficient == 0.0 ? 0.0
                                                     : std::numeric_limits<double>::infinity());
        t.p_value = normal_two_sided_p(z);
        t.stars = star_level(t.p_value);
        res.terms.push_back(std::move(t));
    }
    res.param_count = static_cast<int>(k) + 1;
    const double ll = truncated_loglik(x, y, spec.lower_bound, spec.upper_bound, beta, sigma);
    const FitMetrics fm = fit_metrics(res.param_count, ll);
    res.log_lik = fm.log_lik;
    res.aic = fm.aic;
    return res;
}

RegressionResult fit(const RegressionSpec& spec, const Dataset& ds, std::uint64_t seed) {
    switch (spec.method) {
        case RegressionMethod::OLS: return fit_ols(spec, ds);
        case RegressionMethod::Tobit: return fit_tobit(spec, ds);
        case RegressionMethod::Truncated: return fit_truncated(spec, ds, seed);
    }
    throw AnalysisError("unknown regression method");
}

} // namespace frontier
