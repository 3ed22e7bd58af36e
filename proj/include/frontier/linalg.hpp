#pragma once

#include <cstddef>
#include <vector>

namespace frontier {

// Dense row-major matrix. Problem sizes in this toolkit are tiny (tens of
// rows, at most a couple dozen columns), so no attempt at blocking or views.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

Matrix transpose(const Matrix& m);
Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

// Householder QR least squares. `rank_ok` is false when a diagonal of R falls
// below tol relative to the largest one; `deficient_cols` then names the
// offending column indices of X.
struct LeastSquaresResult {
    std::vector<double> beta;
    double rss = 0.0;
    bool rank_ok = true;
    std::vector<std::size_t> deficient_cols;
    // (X'X)^{-1}, valid only when rank_ok.
    Matrix xtx_inv;
};

LeastSquaresResult least_squares(const Matrix& x, const std::vector<double>& y,
                                 double rank_tol = 1e-10);

// Cholesky solve of an SPD system; returns false if the factorization breaks
// down (matrix not positive definite within tolerance).
bool cholesky_solve(const Matrix& a, const std::vector<double>& b, std::vector<double>& out);

// Inverse of an SPD matrix via Cholesky; returns false on breakdown.
bool spd_inverse(const Matrix& a, Matrix& out);

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& out,
                  double pivot_tol = 1e-12);

} // namespace frontier
