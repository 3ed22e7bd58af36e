#pragma once

#include <string>
#include <variant>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/linalg.hpp"
#include "frontier/regress.hpp"

namespace frontier {

struct CorrelationMatrix {
    std::vector<std::string> variables;
    Matrix values; // symmetric, unit diagonal
};

CorrelationMatrix correlation_matrix(const Dataset& ds, const std::vector<std::string>& vars);

// Pairs ordered by |r| descending, for the report's rank-ordered listing.
struct CorrelationPair {
    std::string a;
    std::string b;
    double r = 0.0;
};
std::vector<CorrelationPair> ranked_pairs(const CorrelationMatrix& cm);

struct VifEntry {
    std::string regressor;
    double vif = 1.0; // +inf on exact collinearity
    bool flagged = false;
};

struct VifReport {
    std::vector<VifEntry> entries;
    double threshold = 10.0;
    std::string note; // set when VIF is not computable (fewer than 2 regressors)
};

VifReport vif(const Dataset& ds, const std::vector<std::string>& regressors,
              double threshold = 10.0);

struct PcaResult {
    std::vector<std::string> variables;
    Matrix loadings;                     // columns are components, orthonormal
    std::vector<double> explained_share; // descending, sums to 1
    std::size_t retained = 0;
};

// Retain either a fixed component count or the smallest count reaching a
// cumulative explained-variance share.
using PcaRetain = std::variant<std::size_t, double>;

// PCA on the correlation matrix (variables standardized internally),
// eigendecomposition via cyclic Jacobi rotations.
PcaResult pca(const Dataset& ds, const std::vector<std::string>& vars, PcaRetain retain);

// Population Gini: sum_ij |v_i - v_j| / (2 n^2 mean), no small-sample
// correction. Computed from the sorted series in O(n log n).
double gini(const std::vector<double>& series);

enum class SignMatch { Match, Mismatch, AmbiguousExpected };

struct SignCheckEntry {
    std::string term;
    ExpectedSign expected = ExpectedSign::Ambiguous;
    double coefficient = 0.0;
    SignMatch match = SignMatch::Match;
};

struct SignCheck {
    std::string label;
    std::vector<SignCheckEntry> entries;
};

SignCheck sign_check(const RegressionResult& result, const VariableCatalog& catalog);

// Composite flight hours per ATCO hour, element-wise.
std::vector<double> productivity(const std::vector<double>& composite_flight_hours,
                                 const std::vector<double>& atco_hours);

} // namespace frontier
