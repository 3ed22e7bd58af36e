#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/linalg.hpp"

namespace frontier {

enum class RegressionMethod { OLS, Tobit, Truncated };

const char* to_string(RegressionMethod m);
RegressionMethod method_from_string(const std::string& s);

struct RegressionSpec {
    std::string label;
    std::string dependent;
    std::vector<std::string> regressors;
    bool intercept = true;
    RegressionMethod method = RegressionMethod::OLS;
    std::optional<double> lower_bound; // censoring / truncation limits
    std::optional<double> upper_bound;
};

// Star levels: 3 iff p < 0.01, 2 iff p < 0.05, 1 iff p < 0.1, else 0.
int star_level(double p_value);
const char* star_string(int level);

struct RegressionTerm {
    std::string name;
    double coefficient = 0.0;
    double std_error = 0.0;
    double p_value = 1.0;
    int stars = 0;
};

struct RegressionResult {
    RegressionMethod method = RegressionMethod::OLS;
    std::string label;
    std::string dependent;
    std::vector<RegressionTerm> terms; // intercept ("INT") first when present
    double sigma = 0.0;
    std::optional<double> adj_r2;      // OLS only
    double log_lik = 0.0;
    double aic = 0.0;
    int param_count = 0;               // coefficients, plus sigma for MLE methods
    std::size_t n = 0;
    bool converged = true;
    int iterations = 0;
    bool multistart_disagreement = false;
    std::optional<double> lower_bound;
    std::optional<double> upper_bound;
};

struct FitMetrics {
    std::optional<double> adj_r2;
    double aic = 0.0;
    double log_lik = 0.0;
};

// aic = 2 p - 2 log_lik, exactly.
FitMetrics fit_metrics(int param_count, double log_lik,
                       std::optional<double> adj_r2 = std::nullopt);

RegressionResult fit_ols(const RegressionSpec& spec, const Dataset& ds);
RegressionResult fit_tobit(const RegressionSpec& spec, const Dataset& ds);
// Multi-start count is fixed at 5 (OLS start plus 4 perturbed); `seed` makes
// the perturbations reproducible.
RegressionResult fit_truncated(const RegressionSpec& spec, const Dataset& ds,
                               std::uint64_t seed = 0);
RegressionResult fit(const RegressionSpec& spec, const Dataset& ds, std::uint64_t seed = 0);

// Log-likelihoods and their analytic gradients in (beta, sigma), exposed so
// they can be checked against finite differences. The gradient layout is
// [d/d beta_0 .. d/d beta_{k-1}, d/d sigma].
// Censored (Tobit): observations at a bound contribute CDF mass, interior
// ones the normal density.
double censored_loglik(const Matrix& x, const std::vector<double>& y,
                       std::optional<double> lower, std::optional<double> upper,
                       const std::vector<double>& beta, double sigma);
std::vector<double> censored_loglik_gradient(const Matrix& x, const std::vector<double>& y,
                                             std::optional<double> lower,
                                             std::optional<double> upper,
                                             const std::vector<double>& beta, double sigma);
// Truncated: normal density renormalized by the in-bounds probability mass.
double truncated_loglik(const Matrix& x, const std::vector<double>& y,
                        std::optional<double> lower, std::optional<double> upper,
                        const std::vector<double>& beta, double sigma);
std::vector<double> truncated_loglik_gradient(const Matrix& x, const std::vector<double>& y,
                                              std::optional<double> lower,
                                              std::optional<double> upper,
                                              const std::vector<double>& beta, double sigma);

// Design-matrix assembly shared with the gradient checks: intercept column
// first when requested, then the regressors in spec order.
Matrix build_design(const RegressionSpec& spec, const Dataset& ds);

} // namespace frontier
