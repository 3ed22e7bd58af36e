// Independent oracles used by the unit and acceptance suites. Everything in
// here is deliberately written against the naive textbook definitions and
// shares no code with the library implementations it checks.
#pragma once

#include <optional>
#include <vector>

#include "frontier/linalg.hpp"
#include "frontier/lp.hpp"

namespace oracle {

struct LpVertexResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

// Brute-force vertex enumeration for min c'x s.t. A x {<=,=,>=} b, x >= 0.
// Assumes the optimum, when it exists, is attained at a vertex (the problems
// fed to it are bounded by construction).
LpVertexResult lp_min_by_vertex_enumeration(const std::vector<double>& c,
                                            const frontier::Matrix& a,
                                            const std::vector<frontier::ConstraintSense>& senses,
                                            const std::vector<double>& b);

// Explicit (X'X)^{-1} X'y with the inverse computed from cofactors.
std::vector<double> ols_by_cofactor_inversion(const frontier::Matrix& x,
                                              const std::vector<double>& y);

// Direct double-loop Gini: sum_ij |v_i - v_j| / (2 n^2 mean).
double gini_double_loop(const std::vector<double>& v);

// Pearson correlation from the raw-moment identity
// (n sum xy - sum x sum y) / sqrt((n sum x^2 - (sum x)^2)(n sum y^2 - (sum y)^2)).
double pearson_raw_moments(const std::vector<double>& x, const std::vector<double>& y);

// Eigenvalues of a symmetric matrix via its characteristic polynomial
// (Faddeev-LeVerrier coefficients, Durand-Kerner roots), sorted descending.
std::vector<double> eigenvalues_by_charpoly(const frontier::Matrix& m);

// Coarse grid search maximizer of the censored / truncated likelihoods for a
// 1-regressor-plus-intercept design. Returns (b0, b1, sigma) on the grid.
struct GridFit {
    double b0 = 0.0;
    double b1 = 0.0;
    double sigma = 1.0;
};

GridFit censored_grid_mle(const std::vector<double>& x, const std::vector<double>& y,
                          std::optional<double> lower, std::optional<double> upper,
                          GridFit center, double radius, int points_per_axis);

GridFit truncated_grid_mle(const std::vector<double>& x, const std::vector<double>& y,
                           std::optional<double> lower, std::optional<double> upper,
                           GridFit center, double radius, int points_per_axis);

// Gaussian log-likelihood by direct summation.
double gaussian_loglik_direct(const std::vector<double>& residuals, double sigma);

} // namespace oracle
